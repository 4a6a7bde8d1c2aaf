//! The multilinear component of the free Filippov n-algebra, built level by
//! level.
//!
//! Level `j` describes brackets of `j` nested n-ary brackets on
//! `m_j = j(n-1)+1` letters. Its ambient space `V_j` has one column per pair
//! (basis element `A` of level `j-1`, set `Y` of `n-1` letters), standing for
//! the word `[A, y_1, ..., y_{n-1}]` with `A` carried by the complement of
//! `Y` and `y_1 < ... < y_{n-1}`. The relation subspace is the span of the
//! generalized Jacobi identities
//!
//! `[[x_1..x_n], y_1..y_{n-1}] = sum_i [x_1..[x_i, y_1..y_{n-1}]..x_n]`
//!
//! applied at the outermost bracket, with every argument a basis element of
//! a lower level. Each side is rewritten into `V_j` by `root_ambient`, which
//! uses the equivalent form
//!
//! `[[u_1..u_n], w_2..w_n] = sum_i [[u_1..w_2..u_n], u_i, w_3..w_n]`
//!
//! (with `w_2` substituted for `u_i`) to move bracket depth into the first
//! argument until at most one argument is bracketed. The basis of level `j`
//! is the set of free columns of the relation echelon form.

use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;

use crate::error::{Error, LinalgError, WordError};
use crate::filippov::word::BracketWord;
use crate::linalg::{Field, SparseVec, Subspace};
use crate::module::{mask_letters, restrict_and_standardize, subsets_of_size, Representation};
use crate::perm::{sort_with_sign, Perm};

/// An argument of a bracket: a basis element `idx` of level `level`, carried
/// by the letters in `mask`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub(crate) struct Arg {
    pub mask: u64,
    pub level: u8,
    pub idx: u32,
}

impl Arg {
    fn letter(l: usize) -> Self {
        Arg {
            mask: 1 << l,
            level: 0,
            idx: 0,
        }
    }

    fn min(&self) -> u32 {
        self.mask.trailing_zeros()
    }
}

/// The bits of `x` that lie in `within`, packed to the low end in order.
pub(crate) fn compress(x: u64, within: u64) -> u64 {
    let mut out = 0;
    let mut k = 0;
    let mut w = within;
    while w != 0 {
        let b = w.trailing_zeros();
        if x >> b & 1 == 1 {
            out |= 1 << k;
        }
        k += 1;
        w &= w - 1;
    }
    out
}

/// Inverse of `compress`: spreads the low bits of `x` over the set bits of
/// `within`.
pub(crate) fn expand(x: u64, within: u64) -> u64 {
    let mut out = 0;
    let mut k = 0;
    let mut w = within;
    while w != 0 {
        let b = w.trailing_zeros();
        if x >> k & 1 == 1 {
            out |= 1 << b;
        }
        k += 1;
        w &= w - 1;
    }
    out
}

fn full(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

struct Level<F> {
    m: usize,
    lower_dim: usize,
    subsets: Vec<u64>,
    subset_index: HashMap<u64, usize>,
    relations: Subspace<F>,
    basis: Vec<usize>,
    position: Vec<usize>,
}

impl<F: Field> Level<F> {
    fn ambient_dim(&self) -> usize {
        self.relations.dim()
    }

    fn split(&self, col: usize) -> (u64, usize) {
        (self.subsets[col / self.lower_dim], col % self.lower_dim)
    }
}

type Memo<F> = Mutex<HashMap<Vec<Arg>, SparseVec<F>>>;

/// Per-level statistics.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LevelSummary {
    pub level: usize,
    pub letters: usize,
    pub ambient_dim: usize,
    pub relation_instances: usize,
    pub rank: usize,
    pub dim: usize,
}

/// The modules of all levels `0..=k` for fixed arity `n`.
pub struct Tower<F> {
    n: usize,
    levels: Vec<Level<F>>,
    stats: Vec<LevelSummary>,
    root_memo: Vec<Memo<F>>,
    nf_memo: Vec<Memo<F>>,
    act_memo: Mutex<HashMap<(usize, Vec<usize>, usize), SparseVec<F>>>,
}

impl<F: Field> Tower<F> {
    /// Builds levels `0..=k`. Requires `n >= 2` and `k(n-1)+1 <= 64`.
    pub fn build(n: usize, k: usize) -> Result<Self, Error> {
        if n < 2 || k * (n - 1) + 1 > 64 {
            return Err(WordError::Parameters { n, k }.into());
        }
        let mut t = Tower {
            n,
            levels: Vec::new(),
            stats: Vec::new(),
            root_memo: (0..=k).map(|_| Mutex::new(HashMap::new())).collect(),
            nf_memo: (0..=k).map(|_| Mutex::new(HashMap::new())).collect(),
            act_memo: Mutex::new(HashMap::new()),
        };
        for j in 0..=k {
            t.push_level(j)?;
        }
        Ok(t)
    }

    fn push_level(&mut self, j: usize) -> Result<(), Error> {
        let n = self.n;
        let m = j * (n - 1) + 1;
        if j <= 1 {
            self.levels.push(Level {
                m,
                lower_dim: 1,
                subsets: vec![],
                subset_index: HashMap::new(),
                relations: Subspace::new(1),
                basis: vec![0],
                position: vec![0],
            });
            self.stats.push(LevelSummary {
                level: j,
                letters: m,
                ambient_dim: 1,
                relation_instances: 0,
                rank: 0,
                dim: 1,
            });
            return Ok(());
        }
        let lower_dim = self.levels[j - 1].basis.len();
        let subsets = subsets_of_size(m, n - 1);
        let subset_index = subsets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let ambient = subsets.len() * lower_dim;
        self.levels.push(Level {
            m,
            lower_dim,
            subsets,
            subset_index,
            relations: Subspace::new(ambient),
            basis: vec![],
            position: vec![],
        });
        let instances = self.jacobi_instances(j);
        let rows: Vec<SparseVec<F>> = instances
            .par_iter()
            .map(|(xs, ys)| self.instance_vector(j, xs, ys))
            .collect();
        let mut rel = Subspace::new(ambient);
        rel.extend(rows)?;
        let basis = rel.free_columns();
        let mut position = vec![usize::MAX; ambient];
        for (p, &c) in basis.iter().enumerate() {
            position[c] = p;
        }
        self.stats.push(LevelSummary {
            level: j,
            letters: m,
            ambient_dim: ambient,
            relation_instances: instances.len(),
            rank: rel.rank(),
            dim: basis.len(),
        });
        let lvl = &mut self.levels[j];
        lvl.relations = rel;
        lvl.basis = basis;
        lvl.position = position;
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    /// The top level `k`.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn letters(&self, level: usize) -> usize {
        self.levels[level].m
    }

    pub fn dim(&self, level: usize) -> usize {
        self.levels[level].basis.len()
    }

    pub fn ambient_dim(&self, level: usize) -> usize {
        self.levels[level].ambient_dim()
    }

    pub fn level_summaries(&self) -> &[LevelSummary] {
        &self.stats
    }

    pub fn relations(&self, level: usize) -> &Subspace<F> {
        &self.levels[level].relations
    }

    /// Enumerates the Jacobi instances at level `j`: `n` arguments `x` and
    /// `n-1` arguments `y`, each listed by increasing least letter, with
    /// levels summing to `j-2` and together using every letter once.
    fn jacobi_instances(&self, j: usize) -> Vec<(Vec<Arg>, Vec<Arg>)> {
        let n = self.n;
        let m = self.levels[j].m;
        let mut out = Vec::new();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        self.instances_rec(n, full(m), j - 2, &mut xs, &mut ys, &mut out);
        out
    }

    fn instances_rec(
        &self,
        n: usize,
        remaining: u64,
        budget: usize,
        xs: &mut Vec<Arg>,
        ys: &mut Vec<Arg>,
        out: &mut Vec<(Vec<Arg>, Vec<Arg>)>,
    ) {
        if remaining == 0 {
            if budget == 0 && xs.len() == n && ys.len() == n - 1 {
                out.push((xs.clone(), ys.clone()));
            }
            return;
        }
        let first = remaining.trailing_zeros() as usize;
        let rest = remaining & !(1 << first);
        for l in 0..=budget {
            let size = l * (self.n - 1);
            if size > rest.count_ones() as usize {
                break;
            }
            let dim = self.dim(l);
            let rest_letters = mask_letters(rest);
            for choice in subsets_of_size(rest_letters.len(), size) {
                let mask = (1 << first) | expand(choice, rest);
                for idx in 0..dim {
                    let a = Arg {
                        mask,
                        level: l as u8,
                        idx: idx as u32,
                    };
                    if xs.len() < n {
                        xs.push(a);
                        self.instances_rec(n, remaining & !mask, budget - l, xs, ys, out);
                        xs.pop();
                    }
                    if ys.len() < n - 1 {
                        ys.push(a);
                        self.instances_rec(n, remaining & !mask, budget - l, xs, ys, out);
                        ys.pop();
                    }
                }
            }
        }
    }

    /// `[[x..], y..] - sum_i [x_1..[x_i, y..]..x_n]`, rewritten into `V_j`.
    fn instance_vector(&self, j: usize, xs: &[Arg], ys: &[Arg]) -> SparseVec<F> {
        let mut pairs = Vec::new();
        let (xmask, inner) = self.bracket_of(xs);
        for (e, c) in inner.iter() {
            let mut args = vec![Arg {
                mask: xmask,
                level: self.level_of(xs) as u8,
                idx: *e as u32,
            }];
            args.extend_from_slice(ys);
            for (col, v) in self.root_ambient(j, &args).iter() {
                pairs.push((*col, v.mul(c)));
            }
        }
        for i in 0..xs.len() {
            let mut sub = vec![xs[i]];
            sub.extend_from_slice(ys);
            let (smask, inner) = self.bracket_of(&sub);
            let slevel = self.level_of(&sub) as u8;
            for (e, c) in inner.iter() {
                let mut args = xs.to_vec();
                args[i] = Arg {
                    mask: smask,
                    level: slevel,
                    idx: *e as u32,
                };
                let nc = c.neg();
                for (col, v) in self.root_ambient(j, &args).iter() {
                    pairs.push((*col, v.mul(&nc)));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    fn level_of(&self, args: &[Arg]) -> usize {
        args.iter().map(|a| a.level as usize).sum::<usize>() + 1
    }

    /// The bracket of `args` (on arbitrary letters), in the basis of its
    /// level, together with its letter mask.
    fn bracket_of(&self, args: &[Arg]) -> (u64, SparseVec<F>) {
        let mask = args.iter().fold(0, |a, x| a | x.mask);
        let local: Vec<Arg> = args
            .iter()
            .map(|a| Arg {
                mask: compress(a.mask, mask),
                ..*a
            })
            .collect();
        (mask, self.bracket_nf(self.level_of(args), &local))
    }

    /// Normal form, in the basis of level `l`, of the bracket of `args`
    /// whose masks partition `[m_l]`.
    fn bracket_nf(&self, l: usize, args: &[Arg]) -> SparseVec<F> {
        let keyed: Vec<(u32, Arg)> = args.iter().map(|a| (a.min(), *a)).collect();
        let (sorted, sign) = sort_with_sign(&keyed);
        let sorted: Vec<Arg> = sorted.into_iter().map(|(_, a)| a).collect();
        let cached = self.nf_memo[l].lock().unwrap().get(&sorted).cloned();
        let v = match cached {
            Some(v) => v,
            None => {
                let lvl = &self.levels[l];
                let amb = self.root_sorted(l, &sorted);
                let v = lvl.relations.reduce(&amb).map_indices(|c| lvl.position[c]);
                self.nf_memo[l].lock().unwrap().insert(sorted, v.clone());
                v
            }
        };
        if sign < 0 {
            v.neg()
        } else {
            v
        }
    }

    /// Rewrites the bracket of `args` (masks partitioning `[m_j]`) into the
    /// ambient space `V_j`, without reducing modulo relations of level `j`.
    pub(crate) fn root_ambient(&self, j: usize, args: &[Arg]) -> SparseVec<F> {
        let keyed: Vec<(u32, Arg)> = args.iter().map(|a| (a.min(), *a)).collect();
        let (sorted, sign) = sort_with_sign(&keyed);
        let sorted: Vec<Arg> = sorted.into_iter().map(|(_, a)| a).collect();
        let v = self.root_sorted(j, &sorted);
        if sign < 0 {
            v.neg()
        } else {
            v
        }
    }

    fn root_sorted(&self, j: usize, args: &[Arg]) -> SparseVec<F> {
        debug_assert_eq!(args.len(), self.n);
        if j == 1 {
            return SparseVec::unit(0);
        }
        if let Some(v) = self.root_memo[j].lock().unwrap().get(args) {
            return v.clone();
        }
        let v = self.root_compute(j, args);
        self.root_memo[j].lock().unwrap().insert(args.to_vec(), v.clone());
        v
    }

    fn root_compute(&self, j: usize, args: &[Arg]) -> SparseVec<F> {
        let lvl = &self.levels[j];
        let bracketed: Vec<usize> = (0..args.len()).filter(|&i| args[i].level > 0).collect();
        if bracketed.len() == 1 {
            let p = bracketed[0];
            let a = args[p];
            debug_assert_eq!(a.level as usize, j - 1);
            let y = full(lvl.m) & !a.mask;
            let col = lvl.subset_index[&y] * lvl.lower_dim + a.idx as usize;
            let v = SparseVec::unit(col);
            return if p % 2 == 1 { v.neg() } else { v };
        }
        debug_assert!(bracketed.len() >= 2);
        // w2: deepest argument (first on ties); w1: shallowest other
        // bracketed argument (last on ties)
        let maxl = bracketed.iter().map(|&i| args[i].level).max().unwrap();
        let p2 = *bracketed.iter().find(|&&i| args[i].level == maxl).unwrap();
        let minl = bracketed
            .iter()
            .filter(|&&i| i != p2)
            .map(|&i| args[i].level)
            .min()
            .unwrap();
        let p1 = *bracketed
            .iter()
            .rev()
            .find(|&&i| i != p2 && args[i].level == minl)
            .unwrap();
        let mut order = vec![p1, p2];
        order.extend((0..args.len()).filter(|&i| i != p1 && i != p2));
        let (_, eps) = sort_with_sign(&order);
        let w1 = args[p1];
        let w2 = args[p2];
        let rest: Vec<Arg> = order[2..].iter().map(|&i| args[i]).collect();
        let us = self.expand_arg(w1);
        let mut pairs = Vec::new();
        for i in 0..us.len() {
            let mut inner = us.clone();
            inner[i] = w2;
            let (imask, nf) = self.bracket_of(&inner);
            let ilevel = self.level_of(&inner) as u8;
            for (e, c) in nf.iter() {
                let mut outer = Vec::with_capacity(self.n);
                outer.push(Arg {
                    mask: imask,
                    level: ilevel,
                    idx: *e as u32,
                });
                outer.push(us[i]);
                outer.extend_from_slice(&rest);
                for (col, v) in self.root_ambient(j, &outer).iter() {
                    pairs.push((*col, v.mul(c)));
                }
            }
        }
        let v = SparseVec::from_pairs(pairs);
        if eps < 0 {
            v.neg()
        } else {
            v
        }
    }

    /// The arguments `[u_1, ..., u_n]` of a basis element.
    fn expand_arg(&self, a: Arg) -> Vec<Arg> {
        let l = a.level as usize;
        if l == 1 {
            return mask_letters(a.mask).into_iter().map(Arg::letter).collect();
        }
        let lvl = &self.levels[l];
        let (y, inner) = lvl.split(lvl.basis[a.idx as usize]);
        let ymask = expand(y, a.mask);
        let mut out = vec![Arg {
            mask: a.mask & !ymask,
            level: (l - 1) as u8,
            idx: inner as u32,
        }];
        out.extend(mask_letters(ymask).into_iter().map(Arg::letter));
        out
    }

    /// Image under σ of the ambient column `col` of level `j >= 2`.
    pub fn act_ambient(&self, j: usize, sigma: &Perm, col: usize) -> SparseVec<F> {
        let lvl = &self.levels[j];
        let (y, a) = lvl.split(col);
        let ys: Vec<usize> = mask_letters(y).iter().map(|&l| sigma.apply(l)).collect();
        let (ys_sorted, s) = sort_with_sign(&ys);
        let new_y = ys_sorted.iter().fold(0u64, |acc, &l| acc | 1 << l);
        let comp = mask_letters(full(lvl.m) & !y);
        let (pi, _) = restrict_and_standardize(sigma, &comp);
        let lower = self.act_basis(j - 1, &pi, a);
        let base = lvl.subset_index[&new_y] * lvl.lower_dim;
        let v = SparseVec::from_sorted(lower.into_entries().into_iter().map(|(i, x)| (base + i, x)).collect());
        if s < 0 {
            v.neg()
        } else {
            v
        }
    }

    /// Image under σ of basis element `pos` of level `j`, in basis
    /// coordinates.
    pub fn act_basis(&self, j: usize, sigma: &Perm, pos: usize) -> SparseVec<F> {
        match j {
            0 => return SparseVec::unit(0),
            1 => return SparseVec::unit(0).scale(&F::from_i64(sigma.sign() as i64)),
            _ => {}
        }
        let key = (j, sigma.images().to_vec(), pos);
        if let Some(v) = self.act_memo.lock().unwrap().get(&key) {
            return v.clone();
        }
        let lvl = &self.levels[j];
        let v = self.act_ambient(j, sigma, lvl.basis[pos]);
        let r = lvl.relations.reduce(&v).map_indices(|c| lvl.position[c]);
        if j < self.top() {
            self.act_memo.lock().unwrap().insert(key, r.clone());
        }
        r
    }

    /// The comb word of basis element `pos` of level `j`, on letters
    /// `0..m_j`.
    pub fn comb_word(&self, j: usize, pos: usize) -> BracketWord {
        let m = self.levels[j].m;
        self.word_of(Arg {
            mask: full(m),
            level: j as u8,
            idx: pos as u32,
        })
    }

    fn word_of(&self, a: Arg) -> BracketWord {
        if a.level == 0 {
            return BracketWord::Letter(Arg::min(&a));
        }
        BracketWord::Bracket(self.expand_arg(a).into_iter().map(|u| self.word_of(u)).collect())
    }

    /// Normal form of a multilinear word of arity `n` with `k` brackets on
    /// letters `0..m_k`, in the basis of the top level.
    pub fn word_nf(&self, w: &BracketWord) -> Result<SparseVec<F>, Error> {
        w.check_arity(self.n)?;
        w.check_multilinear()?;
        let k = w.num_brackets();
        if k != self.top() {
            return Err(WordError::Parameters { n: self.n, k }.into());
        }
        let (_, _, v) = self.node_nf(w);
        Ok(v)
    }

    /// Normal form of a subword on arbitrary letters: (mask, level, vector).
    fn node_nf(&self, w: &BracketWord) -> (u64, usize, SparseVec<F>) {
        match w {
            BracketWord::Letter(l) => (1 << l, 0, SparseVec::unit(0)),
            BracketWord::Bracket(c) => {
                let parts: Vec<(u64, usize, SparseVec<F>)> = c.iter().map(|x| self.node_nf(x)).collect();
                let mask = parts.iter().fold(0, |a, p| a | p.0);
                let level = parts.iter().map(|p| p.1).sum::<usize>() + 1;
                let mut pairs = Vec::new();
                let mut stack: Vec<(Vec<Arg>, F)> = vec![(vec![], F::one())];
                while let Some((args, coef)) = stack.pop() {
                    if args.len() == parts.len() {
                        for (e, v) in self.bracket_of(&args).1.iter() {
                            pairs.push((*e, v.mul(&coef)));
                        }
                        continue;
                    }
                    let (pm, pl, pv) = &parts[args.len()];
                    for (e, v) in pv.iter() {
                        let mut a = args.clone();
                        a.push(Arg {
                            mask: *pm,
                            level: *pl as u8,
                            idx: *e as u32,
                        });
                        stack.push((a, coef.mul(v)));
                    }
                }
                (mask, level, SparseVec::from_pairs(pairs))
            }
        }
    }

    /// Checks that the relations of level `j` are stable under the adjacent
    /// transpositions: on every echelon row when the ambient space has at
    /// most `full_limit` columns, otherwise on random combinations.
    pub fn check_invariance(&self, j: usize, full_limit: usize) -> Result<(), LinalgError> {
        if j < 2 {
            return Ok(());
        }
        let lvl = &self.levels[j];
        let m = lvl.m;
        let gens: Vec<Perm> = (0..m - 1).map(|i| Perm::transposition(m, i, i + 1)).collect();
        let act = |s: &Perm, v: &SparseVec<F>| {
            let mut pairs = Vec::new();
            for (c, x) in v.iter() {
                for (d, y) in self.act_ambient(j, s, *c).iter() {
                    pairs.push((*d, x.mul(y)));
                }
            }
            SparseVec::from_pairs(pairs)
        };
        if lvl.ambient_dim() <= full_limit {
            for s in &gens {
                let images: Vec<SparseVec<F>> = lvl.relations.rows().par_iter().map(|r| act(s, r)).collect();
                lvl.relations.check_invariant(&images)?;
            }
        } else {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed + j as u64);
            for _ in 0..3 {
                let mut pairs = Vec::new();
                for r in lvl.relations.rows() {
                    let c = F::from_i64(rng.gen_range(-1000..=1000));
                    pairs.extend(r.iter().map(|(i, x)| (*i, x.mul(&c))));
                }
                let v = SparseVec::from_pairs(pairs);
                let images: Vec<SparseVec<F>> = gens.par_iter().map(|s| act(s, &v)).collect();
                lvl.relations.check_invariant(&images)?;
            }
        }
        Ok(())
    }
}

impl<F: Field> Representation<F> for Tower<F> {
    fn degree(&self) -> usize {
        self.levels[self.top()].m
    }

    fn dim(&self) -> usize {
        self.dim(self.top())
    }

    fn act(&self, sigma: &Perm, i: usize) -> SparseVec<F> {
        self.act_basis(self.top(), sigma, i)
    }

    fn trace(&self, sigma: &Perm) -> F {
        let j = self.top();
        if j < 2 {
            return self.act_basis(j, sigma, 0).get(0);
        }
        let lvl = &self.levels[j];
        lvl.basis
            .par_iter()
            .map(|&f| lvl.relations.reduced_coefficient(&self.act_ambient(j, sigma, f), f))
            .reduce(F::zero, |a, b| a.add(&b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::F998244353;
    use num_rational::BigRational;

    #[test]
    fn masks() {
        assert_eq!(compress(0b10100, 0b11100), 0b101);
        assert_eq!(expand(0b101, 0b11100), 0b10100);
    }

    #[test]
    fn small_dimensions() {
        let t = Tower::<BigRational>::build(2, 3).unwrap();
        assert_eq!((0..=3).map(|j| t.dim(j)).collect::<Vec<_>>(), vec![1, 1, 2, 6]);
        let t = Tower::<F998244353>::build(3, 3).unwrap();
        assert_eq!(t.dim(2), 5);
        assert_eq!(t.dim(3), 56);
        assert_eq!(t.ambient_dim(3), 105);
        t.check_invariance(3, 10_000).unwrap();
        t.check_invariance(2, 10_000).unwrap();
    }

    #[test]
    fn comb_words_normalize_to_themselves() {
        let t = Tower::<BigRational>::build(3, 2).unwrap();
        for p in 0..t.dim(2) {
            let w = t.comb_word(2, p);
            assert!(w.is_comb());
            assert_eq!(t.word_nf(&w).unwrap(), SparseVec::unit(p));
        }
    }
}
