//! Characters, decompositions and structural checks for the modules built
//! by [`Tower`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::characters::{check_degree_cap, decompose, factorial, ClassFunction, Decomposition};
use crate::combinatorics::Partition;
use crate::error::{Error, WordError};
use crate::filippov::shape::{enumerate_shapes, BracketShape};
use crate::filippov::tower::{LevelSummary, Tower};
use crate::filippov::word::{BracketWord, WordCombination};
use crate::linalg::{ArithmeticMode, Field, SparseVec, Subspace};
use crate::module::{character, run_in_mode, FieldTask, Representation, Restriction, Submodule};
use crate::perm::{sort_with_sign, Perm};

/// Number of letters of a word with `k` brackets of arity `n`.
pub fn num_letters(n: usize, k: usize) -> usize {
    k * (n - 1) + 1
}

/// Number of comb words up to antisymmetry: m! / (n! ((n-1)!)^(k-1)).
pub fn comb_dimension(n: usize, k: usize) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    let m = num_letters(n, k);
    factorial(m) / (factorial(n) * factorial(n - 1).pow(k as u32 - 1))
}

fn check_parameters(n: usize, k: usize, cap: usize) -> Result<(), Error> {
    if n < 2 {
        return Err(WordError::Parameters { n, k }.into());
    }
    let m = num_letters(n, k);
    if check_degree_cap(m, cap).is_err() {
        return Err(Error::CapExceeded { degree: m, cap });
    }
    Ok(())
}

/// Dimension data of the module for (n, k).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoSummary {
    pub n: usize,
    pub k: usize,
    pub degree: usize,
    pub comb_dim: String,
    pub ambient_dim: usize,
    pub rank: usize,
    pub dim: usize,
    pub levels: Vec<LevelSummary>,
}

impl RhoSummary {
    fn of<F: Field>(t: &Tower<F>) -> Self {
        let k = t.top();
        let n = t.arity();
        let last = t.level_summaries()[k].clone();
        RhoSummary {
            n,
            k,
            degree: t.letters(k),
            comb_dim: comb_dimension(n, k).to_string(),
            ambient_dim: last.ambient_dim,
            rank: last.rank,
            dim: last.dim,
            levels: t.level_summaries().to_vec(),
        }
    }
}

struct RhoTask {
    n: usize,
    k: usize,
    with_character: bool,
}

impl FieldTask for RhoTask {
    type Output = (RhoSummary, Option<ClassFunction>);

    fn run<F: Field>(&self) -> Result<Self::Output, Error> {
        let t = Tower::<F>::build(self.n, self.k)?;
        for j in 2..=self.k {
            t.check_invariance(j, 600)?;
        }
        let ch = self.with_character.then(|| character::<F, _>(&t));
        Ok((RhoSummary::of(&t), ch))
    }
}

/// Builds the module for (n, k) and returns its dimension data.
pub fn rho_summary(n: usize, k: usize, mode: ArithmeticMode, cap: usize) -> Result<RhoSummary, Error> {
    check_parameters(n, k, cap)?;
    let task = RhoTask {
        n,
        k,
        with_character: false,
    };
    Ok(run_in_mode(&task, mode)?.0)
}

/// The character of the module for (n, k), with its dimension data.
pub fn rho_character(
    n: usize,
    k: usize,
    mode: ArithmeticMode,
    cap: usize,
) -> Result<(RhoSummary, ClassFunction), Error> {
    check_parameters(n, k, cap)?;
    let task = RhoTask {
        n,
        k,
        with_character: true,
    };
    let (s, ch) = run_in_mode(&task, mode)?;
    Ok((s, ch.expect("requested")))
}

/// Decomposition of the module for (n, k) into irreducibles.
pub fn rho_decompose(
    n: usize,
    k: usize,
    mode: ArithmeticMode,
    cap: usize,
) -> Result<(RhoSummary, Decomposition), Error> {
    let (s, ch) = rho_character(n, k, mode, cap)?;
    Ok((s, decompose(&ch)?))
}

/// Rewrites a word, by antisymmetry and the generalized Jacobi identity
/// only, as a combination of comb words (every bracket has at most one
/// bracketed argument, placed first).
pub fn comb_rewrite(w: &BracketWord) -> WordCombination {
    match w {
        BracketWord::Letter(_) => WordCombination::single(w),
        BracketWord::Bracket(children) => {
            let parts: Vec<WordCombination> = children.iter().map(comb_rewrite).collect();
            let mut out = WordCombination::new();
            let mut stack: Vec<(Vec<BracketWord>, BigRational)> = vec![(vec![], <BigRational as One>::one())];
            while let Some((args, c)) = stack.pop() {
                if args.len() == parts.len() {
                    out.add_scaled(&rewrite_root(args), &c);
                    continue;
                }
                for (t, x) in parts[args.len()].terms() {
                    let mut a = args.clone();
                    a.push(t.clone());
                    stack.push((a, &c * x));
                }
            }
            out
        }
    }
}

/// Rewrites a bracket whose arguments are comb words.
fn rewrite_root(args: Vec<BracketWord>) -> WordCombination {
    let depth: Vec<usize> = args.iter().map(|a| a.num_brackets()).collect();
    let bracketed: Vec<usize> = (0..args.len()).filter(|&i| depth[i] > 0).collect();
    if bracketed.len() <= 1 {
        return WordCombination::single(&BracketWord::Bracket(args));
    }
    let maxd = bracketed.iter().map(|&i| depth[i]).max().unwrap();
    let p2 = *bracketed.iter().find(|&&i| depth[i] == maxd).unwrap();
    let mind = bracketed.iter().filter(|&&i| i != p2).map(|&i| depth[i]).min().unwrap();
    let p1 = *bracketed.iter().rev().find(|&&i| i != p2 && depth[i] == mind).unwrap();
    let mut order = vec![p1, p2];
    order.extend((0..args.len()).filter(|&i| i != p1 && i != p2));
    let (_, eps) = sort_with_sign(&order);
    let w2 = args[p2].clone();
    let rest: Vec<BracketWord> = order[2..].iter().map(|&i| args[i].clone()).collect();
    let us = args[p1].children().to_vec();
    let mut out = WordCombination::new();
    let sign = BigRational::from_integer(eps.into());
    for i in 0..us.len() {
        let mut inner = us.clone();
        inner[i] = w2.clone();
        for (t, c) in comb_rewrite(&BracketWord::Bracket(inner)).terms() {
            let mut outer = vec![t.clone(), us[i].clone()];
            outer.extend(rest.iter().cloned());
            out.add_scaled(&rewrite_root(outer), &(c * &sign));
        }
    }
    out
}

fn replace_at(w: &BracketWord, path: &[usize], new: &BracketWord) -> BracketWord {
    match path.split_first() {
        None => new.clone(),
        Some((&i, rest)) => {
            let mut c = w.children().to_vec();
            c[i] = replace_at(&c[i], rest, new);
            BracketWord::Bracket(c)
        }
    }
}

fn internal_paths(w: &BracketWord, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if let BracketWord::Bracket(c) = w {
        out.push(prefix.clone());
        for (i, x) in c.iter().enumerate() {
            prefix.push(i);
            internal_paths(x, prefix, out);
            prefix.pop();
        }
    }
}

fn subword<'a>(w: &'a BracketWord, path: &[usize]) -> &'a BracketWord {
    path.iter().fold(w, |acc, &i| &acc.children()[i])
}

/// Instances of the two forms of the generalized Jacobi identity inside
/// `w`: for every bracket and every bracketed argument `[x_1..x_n]` of it
/// (with remaining arguments y), both
/// `[[x..], y..] - sum_i [x_1..[x_i, y..]..x_n]` and
/// `[[x..], y..] - sum_i [[x_1..y_1..x_n], x_i, y_2..]` (y_1 in slot i),
/// with the rest of the word unchanged. Each is zero in the module.
pub fn jacobi_relations(w: &BracketWord) -> Vec<WordCombination> {
    let mut paths = Vec::new();
    internal_paths(w, &mut vec![], &mut paths);
    let one = <BigRational as One>::one();
    let minus = -<BigRational as One>::one();
    let mut out = Vec::new();
    for p in paths {
        let node = subword(w, &p);
        let c = node.children();
        for q in (0..c.len()).filter(|&q| !c[q].is_letter()) {
            let xs = c[q].children().to_vec();
            let ys: Vec<BracketWord> = (0..c.len()).filter(|&i| i != q).map(|i| c[i].clone()).collect();
            let mut lhs = vec![c[q].clone()];
            lhs.extend(ys.iter().cloned());
            let lhs = replace_at(w, &p, &BracketWord::Bracket(lhs));

            let mut first = WordCombination::new();
            first.add_term(&lhs, &one);
            for i in 0..xs.len() {
                let mut inner = vec![xs[i].clone()];
                inner.extend(ys.iter().cloned());
                let mut args = xs.clone();
                args[i] = BracketWord::Bracket(inner);
                first.add_term(&replace_at(w, &p, &BracketWord::Bracket(args)), &minus);
            }
            out.push(first);

            let mut second = WordCombination::new();
            second.add_term(&lhs, &one);
            for i in 0..xs.len() {
                let mut inner = xs.clone();
                inner[i] = ys[0].clone();
                let mut args = vec![BracketWord::Bracket(inner), xs[i].clone()];
                args.extend(ys[1..].iter().cloned());
                second.add_term(&replace_at(w, &p, &BracketWord::Bracket(args)), &minus);
            }
            out.push(second);
        }
    }
    out
}

impl<F: Field> Tower<F> {
    /// Normal form of a combination of words.
    pub fn combination_nf(&self, c: &WordCombination) -> Result<SparseVec<F>, Error> {
        let mut acc = SparseVec::zero();
        for (w, x) in c.terms() {
            let coef = F::from_rational(x)
                .ok_or_else(|| Error::Verification(format!("coefficient {x} not defined over {}", F::name())))?;
            acc = acc.add_scaled(&self.word_nf(w)?, &coef);
        }
        Ok(acc)
    }

    /// The submodule generated by all words of the given shapes.
    pub fn shapes_submodule(&self, shapes: &[BracketShape]) -> Result<Submodule<'_, F, Self>, Error> {
        let seeds = shapes
            .iter()
            .map(|s| self.word_nf(&s.fill()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Submodule::span(self, seeds))
    }
}

/// Submodule of the top level spanned by the words that are not combs up to
/// antisymmetry.
pub fn noncomb_character<F: Field>(t: &Tower<F>) -> Result<(usize, ClassFunction), Error> {
    let shapes: Vec<BracketShape> = enumerate_shapes(t.arity(), t.top())
        .into_iter()
        .filter(|s| !s.is_comb_like())
        .collect();
    let sub = t.shapes_submodule(&shapes)?;
    Ok((sub.dim(), character::<F, _>(&sub)))
}

/// Character of the quotient of the span of words of shape `shape` by its
/// intersection with the span of words whose shape has a lexicographically
/// smaller depth vector, computed as (span of both) minus (the lower span).
pub fn shape_quotient_character<F: Field>(t: &Tower<F>, shape: &BracketShape) -> Result<(usize, ClassFunction), Error> {
    let dv = shape.depth_vector();
    let lower: Vec<BracketShape> = enumerate_shapes(t.arity(), t.top())
        .into_iter()
        .filter(|s| s.depth_vector() < dv)
        .collect();
    let d = t.shapes_submodule(&lower)?;
    let mut both = lower.clone();
    both.push(shape.clone());
    let s = t.shapes_submodule(&both)?;
    let ch = character::<F, _>(&s).sub(&character::<F, _>(&d))?;
    Ok((s.dim() - d.dim(), ch))
}

/// Result of comparing the symmetrized top part of (n, k) with (n-1, k).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HatCheck {
    pub n: usize,
    pub k: usize,
    /// Dimension of α·ρ where α symmetrizes the last k letters.
    pub symmetrized_dim: usize,
    /// Dimension of the module for (n-1, k).
    pub lower_dim: usize,
    pub characters_agree: bool,
    /// The map "insert one symmetrized letter into every bracket" kills the
    /// relations of (n-1, k).
    pub map_well_defined: bool,
    /// Rank of that map, which must equal `lower_dim`.
    pub map_rank: usize,
    /// Its image lies in α·ρ.
    pub image_in_symmetrized: bool,
}

impl HatCheck {
    pub fn passed(&self) -> bool {
        self.symmetrized_dim == self.lower_dim
            && self.characters_agree
            && self.map_well_defined
            && self.map_rank == self.lower_dim
            && self.image_in_symmetrized
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// The symmetrizer over the last `k` letters, as a list of permutations.
fn symmetrizer(m: usize, k: usize) -> Vec<Perm> {
    let b: Vec<usize> = (m - k..m).collect();
    permutations(&b)
        .into_iter()
        .map(|p| {
            let mut images: Vec<usize> = (0..m - k).collect();
            images.extend(p);
            Perm::from_images(images)
        })
        .collect()
}

struct HatTask {
    n: usize,
    k: usize,
}

impl HatTask {
    fn alpha<F: Field>(&self, t: &Tower<F>, alpha: &[Perm], v: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = SparseVec::zero();
        for s in alpha {
            acc = acc.add(&t.act_vec(s, v));
        }
        acc
    }

    /// Inserts `b` into every bracket of a word of (n-1, k), sends the b's
    /// to the last k letters and symmetrizes.
    fn lift_word<F: Field>(&self, t: &Tower<F>, alpha: &[Perm], w: &BracketWord) -> Result<SparseVec<F>, Error> {
        let m = t.letters(self.k);
        let mut fresh = ((m - self.k) as u32)..(m as u32);
        let full = w.insert_b().substitute_b(&mut fresh);
        Ok(self.alpha(t, alpha, &t.word_nf(&full)?))
    }
}

impl FieldTask for HatTask {
    type Output = HatCheck;

    fn run<F: Field>(&self) -> Result<HatCheck, Error> {
        let (n, k) = (self.n, self.k);
        let t = Tower::<F>::build(n, k)?;
        let m = t.letters(k);
        let m2 = m - k;
        let alpha = symmetrizer(m, k);
        let mut u = Subspace::new(t.dim(k));
        u.extend((0..t.dim(k)).map(|f| self.alpha(&t, &alpha, &SparseVec::unit(f))))?;
        let restricted = Restriction::new(&t, m2);
        let sub = Submodule::from_subspace(&restricted, u)?;
        let ch = character::<F, _>(&sub);
        if n == 2 {
            // the lower module is the trivial module on one letter
            let triv = ClassFunction::from_fn(1, |_| <BigRational as One>::one());
            return Ok(HatCheck {
                n,
                k,
                symmetrized_dim: sub.dim(),
                lower_dim: 1,
                characters_agree: ch == triv,
                map_well_defined: true,
                map_rank: 1,
                image_in_symmetrized: true,
            });
        }
        let lower = Tower::<F>::build(n - 1, k)?;
        let lower_ch = character::<F, _>(&lower);
        let mut image = Subspace::new(t.dim(k));
        let mut inside = true;
        for f in 0..lower.dim(k) {
            let v = self.lift_word(&t, &alpha, &lower.comb_word(k, f))?;
            inside &= sub.space().contains(&v);
            image.insert(&v)?;
        }
        // the relations of the top level of (n-1, k), evaluated on ambient
        // columns [A, y_1..y_{n-2}]
        let mut well_defined = true;
        if k >= 2 {
            let lm = lower.letters(k);
            let lower_dim = lower.dim(k - 1);
            let subsets = crate::module::subsets_of_size(lm, n - 2);
            let column_word = |c: usize| -> BracketWord {
                let y = subsets[c / lower_dim];
                let a = lower.comb_word(k - 1, c % lower_dim);
                let comp: Vec<u32> = (0..lm as u32).filter(|l| y >> l & 1 == 0).collect();
                let mut args = vec![a.relabel(&|l| comp[l as usize])];
                args.extend((0..lm as u32).filter(|l| y >> l & 1 == 1).map(BracketWord::Letter));
                BracketWord::Bracket(args)
            };
            for row in lower.relations(k).rows() {
                let mut acc = SparseVec::zero();
                for (c, x) in row.iter() {
                    acc = acc.add_scaled(&self.lift_word(&t, &alpha, &column_word(*c))?, x);
                }
                if !acc.is_zero() {
                    well_defined = false;
                    break;
                }
            }
        }
        Ok(HatCheck {
            n,
            k,
            symmetrized_dim: sub.dim(),
            lower_dim: lower.dim(k),
            characters_agree: ch == lower_ch,
            map_well_defined: well_defined,
            map_rank: image.rank(),
            image_in_symmetrized: inside,
        })
    }
}

/// Checks that symmetrizing the last k letters of the module for (n, k)
/// leaves a module for S_{k(n-2)+1} isomorphic to the module for (n-1, k),
/// and that inserting a symmetrized letter into each bracket is a
/// well-defined injective map from the latter.
pub fn hat_rho_check(n: usize, k: usize, mode: ArithmeticMode, cap: usize) -> Result<HatCheck, Error> {
    check_parameters(n, k, cap)?;
    if k == 0 {
        return Err(WordError::Parameters { n, k }.into());
    }
    run_in_mode(&HatTask { n, k }, mode)
}

/// The split of the module for (n, k) into the part coming from (n-1, k)
/// by adding a top row of length k, and the rest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaGamma {
    pub n: usize,
    pub k: usize,
    pub rho: Decomposition,
    pub beta: Decomposition,
    pub gamma: Decomposition,
}

impl BetaGamma {
    /// Largest number of columns in the remainder.
    pub fn gamma_max_columns(&self) -> usize {
        self.gamma.max_columns()
    }
}

/// Adds a first row of length `k` to every constituent.
pub fn add_top_row(d: &Decomposition, k: usize) -> Result<Decomposition, Error> {
    let mut out = Decomposition::new(d.degree() + k);
    for (l, mult) in d.terms() {
        out.add(l.with_top_row(k)?, mult);
    }
    Ok(out)
}

pub fn beta_gamma(n: usize, k: usize, mode: ArithmeticMode, cap: usize) -> Result<BetaGamma, Error> {
    let (_, rho) = rho_decompose(n, k, mode, cap)?;
    let lower = if n == 2 {
        Decomposition::from_pairs(1, [(Partition::row(1), 1)])
    } else {
        rho_decompose(n - 1, k, mode, cap)?.1
    };
    let beta = add_top_row(&lower, k)?;
    let gamma = rho
        .checked_sub(&beta)
        .ok_or_else(|| Error::Verification(format!("{beta} is not contained in {rho} for n = {n}, k = {k}")))?;
    Ok(BetaGamma { n, k, rho, beta, gamma })
}
