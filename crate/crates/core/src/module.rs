//! Concrete S_m-modules: quotients of a permutation-like ambient space by an
//! invariant relation subspace, submodules spanned by orbits, induction
//! products and direct sums, with characters read off from traces.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::ClassFunction;
use crate::combinatorics::Partition;
use crate::error::{Error, LinalgError};
use crate::linalg::{agree, apply_linear, ArithmeticMode, Field, SparseVec, Subspace, F2147483647, F998244353};
use crate::perm::Perm;

/// A finite-dimensional representation of S_m with a chosen basis.
///
/// `act(σ, i)` is the image of the `i`-th basis vector under σ, where σ acts
/// on the left by relabeling letters.
pub trait Representation<F: Field>: Sync {
    fn degree(&self) -> usize;
    fn dim(&self) -> usize;
    fn act(&self, sigma: &Perm, i: usize) -> SparseVec<F>;

    /// Image of an arbitrary vector.
    fn act_vec(&self, sigma: &Perm, v: &SparseVec<F>) -> SparseVec<F> {
        apply_linear(v, |i| self.act(sigma, i))
    }

    fn trace(&self, sigma: &Perm) -> F {
        (0..self.dim())
            .into_par_iter()
            .map(|i| self.act(sigma, i).get(i))
            .reduce(F::zero, |a, b| a.add(&b))
    }
}

/// The adjacent transpositions (i, i+1) of S_m.
pub fn adjacent_transpositions(m: usize) -> Vec<Perm> {
    (0..m.saturating_sub(1))
        .map(|i| Perm::transposition(m, i, i + 1))
        .collect()
}

/// The character, evaluated by tracing one representative per cycle type.
/// Over a prime field the trace is lifted to the integer of smallest
/// absolute value, which is exact because |χ(σ)| ≤ dim < p/2.
pub fn character<F: Field, R: Representation<F> + ?Sized>(r: &R) -> ClassFunction {
    let m = r.degree();
    let classes = Partition::all(m);
    let values: Vec<BigRational> = classes
        .par_iter()
        .map(|mu| r.trace(&Perm::from_cycle_type(mu)).lift())
        .collect();
    let mut it = values.into_iter();
    ClassFunction::from_fn(m, |_| it.next().expect("one value per class"))
}

/// An ambient space with a basis permuted up to scalars (or more generally
/// acted on linearly) by S_m.
pub trait AmbientAction<F: Field>: Sync {
    fn degree(&self) -> usize;
    fn ambient_dim(&self) -> usize;
    fn act_ambient(&self, sigma: &Perm, col: usize) -> SparseVec<F>;
}

/// Quotient of an ambient space by a relation subspace. The basis is the set
/// of free columns of the relation echelon form.
pub struct QuotientModule<F: Field, A> {
    ambient: A,
    relations: Subspace<F>,
    basis: Vec<usize>,
    position: Vec<usize>,
}

/// Summary of a quotient module, as exported in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleSummary {
    pub ambient_dim: usize,
    pub rank: usize,
    pub quotient_dim: usize,
}

impl<F: Field, A: AmbientAction<F>> QuotientModule<F, A> {
    pub fn new(ambient: A, relations: Subspace<F>) -> Self {
        assert_eq!(ambient.ambient_dim(), relations.dim());
        let basis = relations.free_columns();
        let mut position = vec![usize::MAX; relations.dim()];
        for (k, &f) in basis.iter().enumerate() {
            position[f] = k;
        }
        QuotientModule {
            ambient,
            relations,
            basis,
            position,
        }
    }

    /// Builds the quotient by the span of `generators`.
    pub fn from_generators(
        ambient: A,
        generators: impl IntoIterator<Item = SparseVec<F>>,
    ) -> Result<Self, LinalgError> {
        let mut rel = Subspace::new(ambient.ambient_dim());
        rel.extend(generators)?;
        Ok(Self::new(ambient, rel))
    }

    pub fn ambient(&self) -> &A {
        &self.ambient
    }

    pub fn relations(&self) -> &Subspace<F> {
        &self.relations
    }

    /// Ambient columns forming the quotient basis.
    pub fn basis_columns(&self) -> &[usize] {
        &self.basis
    }

    pub fn summary(&self) -> ModuleSummary {
        ModuleSummary {
            ambient_dim: self.relations.dim(),
            rank: self.relations.rank(),
            quotient_dim: self.basis.len(),
        }
    }

    /// Quotient coordinates of an ambient vector.
    pub fn project(&self, v: &SparseVec<F>) -> SparseVec<F> {
        self.relations.reduce(v).map_indices(|i| self.position[i])
    }

    /// Ambient vector of a quotient vector (via the basis columns).
    pub fn lift(&self, v: &SparseVec<F>) -> SparseVec<F> {
        v.map_indices(|i| self.basis[i])
    }

    /// Checks that the relation subspace is stable under the adjacent
    /// transpositions, on every echelon row.
    pub fn check_invariance_full(&self) -> Result<(), LinalgError> {
        for s in adjacent_transpositions(self.ambient.degree()) {
            let images: Vec<SparseVec<F>> = self
                .relations
                .rows()
                .par_iter()
                .map(|r| apply_linear(r, |c| self.ambient.act_ambient(&s, c)))
                .collect();
            self.relations.check_invariant(&images)?;
        }
        Ok(())
    }

    /// Randomized invariance check: `trials` random combinations of the
    /// echelon rows (coefficients in [-1000, 1000], fixed seed) are moved by
    /// every adjacent transposition and must stay in the relation subspace.
    pub fn check_invariance_sampled(&self, trials: usize, seed: u64) -> Result<(), LinalgError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = self.relations.rows();
        if rows.is_empty() {
            return Ok(());
        }
        let gens = adjacent_transpositions(self.ambient.degree());
        for _ in 0..trials {
            let coeffs: Vec<F> = (0..rows.len())
                .map(|_| F::from_i64(rng.gen_range(-1000..=1000)))
                .collect();
            let pairs: Vec<(usize, F)> = rows
                .iter()
                .zip(&coeffs)
                .flat_map(|(r, c)| r.iter().map(move |(i, x)| (*i, x.mul(c))))
                .collect();
            let v = SparseVec::from_pairs(pairs);
            let images: Vec<SparseVec<F>> = gens
                .par_iter()
                .map(|s| apply_linear(&v, |c| self.ambient.act_ambient(s, c)))
                .collect();
            self.relations.check_invariant(&images)?;
        }
        Ok(())
    }
}

impl<F: Field, A: AmbientAction<F>> Representation<F> for QuotientModule<F, A> {
    fn degree(&self) -> usize {
        self.ambient.degree()
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn act(&self, sigma: &Perm, i: usize) -> SparseVec<F> {
        self.project(&self.ambient.act_ambient(sigma, self.basis[i]))
    }

    fn trace(&self, sigma: &Perm) -> F {
        self.basis
            .par_iter()
            .map(|&f| {
                let v = self.ambient.act_ambient(sigma, f);
                self.relations.reduced_coefficient(&v, f)
            })
            .reduce(F::zero, |a, b| a.add(&b))
    }
}

/// A subspace of a representation that is stable under the group.
pub struct Submodule<'a, F: Field, R: ?Sized> {
    parent: &'a R,
    space: Subspace<F>,
}

impl<'a, F: Field, R: Representation<F> + ?Sized> Submodule<'a, F, R> {
    /// The smallest submodule containing `seeds`, by closing under adjacent
    /// transpositions.
    pub fn span(parent: &'a R, seeds: impl IntoIterator<Item = SparseVec<F>>) -> Self {
        let gens = adjacent_transpositions(parent.degree());
        let mut space = Subspace::new(parent.dim());
        let mut queue: Vec<SparseVec<F>> = seeds.into_iter().collect();
        let mut scratch = space.scratch();
        while !queue.is_empty() {
            let mut fresh = Vec::new();
            for v in queue.drain(..) {
                let w = space.reduce_with(&v, &mut scratch);
                if !w.is_zero() {
                    space.insert(&w).expect("in range");
                    fresh.push(w);
                }
            }
            queue = fresh
                .par_iter()
                .flat_map_iter(|w| gens.iter().map(move |s| parent.act_vec(s, w)))
                .collect();
        }
        Submodule { parent, space }
    }

    /// Wraps a subspace that is already known (or to be checked) to be stable.
    pub fn from_subspace(parent: &'a R, space: Subspace<F>) -> Result<Self, LinalgError> {
        let s = Submodule { parent, space };
        s.check_stable()?;
        Ok(s)
    }

    pub fn check_stable(&self) -> Result<(), LinalgError> {
        for g in adjacent_transpositions(self.parent.degree()) {
            let images: Vec<SparseVec<F>> = self
                .space
                .rows()
                .par_iter()
                .map(|r| self.parent.act_vec(&g, r))
                .collect();
            self.space.check_invariant(&images)?;
        }
        Ok(())
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    /// Sum of two submodules of the same parent.
    pub fn sum(&self, other: &Submodule<'a, F, R>) -> Self {
        let mut space = self.space.clone();
        space.extend(other.space.rows().iter().cloned()).expect("same ambient");
        Submodule {
            parent: self.parent,
            space,
        }
    }
}

impl<F: Field, R: Representation<F> + ?Sized> Representation<F> for Submodule<'_, F, R> {
    fn degree(&self) -> usize {
        self.parent.degree()
    }

    fn dim(&self) -> usize {
        self.space.rank()
    }

    /// Coordinates with respect to the echelon rows: since every row has a 1
    /// at its pivot and 0 at the other pivots, the coefficient of row `r`
    /// in a vector of the submodule is its entry at the pivot of `r`.
    fn act(&self, sigma: &Perm, i: usize) -> SparseVec<F> {
        let v = self.parent.act_vec(sigma, &self.space.rows()[i]);
        SparseVec::from_pairs(
            self.space
                .pivots()
                .iter()
                .enumerate()
                .filter_map(|(r, &p)| {
                    let x = v.get(p);
                    (!x.is_zero()).then_some((r, x))
                })
                .collect(),
        )
    }

    fn trace(&self, sigma: &Perm) -> F {
        self.space
            .rows()
            .par_iter()
            .zip(self.space.pivots().par_iter())
            .map(|(row, &p)| self.parent.act_vec(sigma, row).get(p))
            .reduce(F::zero, |a, b| a.add(&b))
    }
}

/// Order-preserving standardization: the permutation π of [len] with
/// σ(sorted(S)[r]) = sorted(σ(S))[π(r)].
pub fn restrict_and_standardize(sigma: &Perm, letters: &[usize]) -> (Perm, Vec<usize>) {
    let images: Vec<usize> = letters.iter().map(|&x| sigma.apply(x)).collect();
    let mut sorted = images.clone();
    sorted.sort_unstable();
    let pi: Vec<usize> = images
        .iter()
        .map(|y| sorted.binary_search(y).expect("present"))
        .collect();
    (Perm::from_images(pi), sorted)
}

/// Letters of a bitmask, increasing.
pub fn mask_letters(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// All `r`-subsets of [m] as bitmasks, in increasing numeric order.
pub fn subsets_of_size(m: usize, r: usize) -> Vec<u64> {
    (0u64..(1u64 << m)).filter(|s| s.count_ones() as usize == r).collect()
}

/// The induction product A • B: basis vectors are (S, a, b) with S the
/// n₁-subset of letters carried by the left factor, enumerated by sorted
/// image sets and then by factor bases.
pub struct InducedModule<'a, F: Field> {
    left: &'a (dyn Representation<F> + 'a),
    right: &'a (dyn Representation<F> + 'a),
    n1: usize,
    n2: usize,
    subsets: Vec<u64>,
    subset_index: std::collections::HashMap<u64, usize>,
}

impl<'a, F: Field> InducedModule<'a, F> {
    pub fn new(left: &'a (dyn Representation<F> + 'a), right: &'a (dyn Representation<F> + 'a)) -> Self {
        let n1 = left.degree();
        let n2 = right.degree();
        let subsets = subsets_of_size(n1 + n2, n1);
        let subset_index = subsets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        InducedModule {
            left,
            right,
            n1,
            n2,
            subsets,
            subset_index,
        }
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.n1, self.n2)
    }

    fn split(&self, i: usize) -> (usize, usize, usize) {
        let d2 = self.right.dim();
        let d1 = self.left.dim();
        (i / (d1 * d2), (i / d2) % d1, i % d2)
    }

    fn index(&self, s: usize, a: usize, b: usize) -> usize {
        (s * self.left.dim() + a) * self.right.dim() + b
    }

    fn tensor(&self, s: usize, va: &SparseVec<F>, vb: &SparseVec<F>) -> SparseVec<F> {
        let mut pairs = Vec::with_capacity(va.nnz() * vb.nnz());
        for (a, x) in va.iter() {
            for (b, y) in vb.iter() {
                pairs.push((self.index(s, *a, *b), x.mul(y)));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// Right multiplication by an arbitrary τ ∈ S_{n₁+n₂}: the basis vector
    /// g_S ⊗ (a ⊗ b) goes to g_S τ ⊗ (a ⊗ b) = g_{S'} ⊗ h(a ⊗ b), where g_S is
    /// the order-preserving shuffle for S and h = g_{S'}⁻¹ g_S τ lies in
    /// S_{n₁} × S_{n₂}.
    pub fn act_right(&self, tau: &Perm, i: usize) -> SparseVec<F> {
        let (s, a, b) = self.split(i);
        let m = self.n1 + self.n2;
        let g = self.shuffle(self.subsets[s]);
        let pi = g.compose(tau);
        let new_mask = (0..self.n1).fold(0u64, |acc, x| acc | 1 << pi.apply(x));
        let h = self.shuffle(new_mask).inverse().compose(&pi);
        let h1 = Perm::from_images((0..self.n1).map(|x| h.apply(x)).collect());
        let h2 = Perm::from_images((self.n1..m).map(|x| h.apply(x) - self.n1).collect());
        self.tensor(
            self.subset_index[&new_mask],
            &self.left.act(&h1, a),
            &self.right.act(&h2, b),
        )
    }

    /// The order-preserving shuffle sending [n₁] onto `mask` and the rest
    /// onto its complement.
    fn shuffle(&self, mask: u64) -> Perm {
        let m = self.n1 + self.n2;
        let mut images: Vec<usize> = (0..m).filter(|x| mask >> x & 1 == 1).collect();
        images.extend((0..m).filter(|x| mask >> x & 1 == 0));
        Perm::from_images(images)
    }

    /// Right multiplication by an element of S_{n₁} × S_{n₂}, i.e. acting
    /// on the factors: `left_perm` on A and `right_perm` on B.
    pub fn act_on_factors(&self, left_perm: &Perm, right_perm: &Perm, i: usize) -> SparseVec<F> {
        let (s, a, b) = self.split(i);
        self.tensor(s, &self.left.act(left_perm, a), &self.right.act(right_perm, b))
    }
}

impl<F: Field> Representation<F> for InducedModule<'_, F> {
    fn degree(&self) -> usize {
        self.n1 + self.n2
    }

    fn dim(&self) -> usize {
        self.subsets.len() * self.left.dim() * self.right.dim()
    }

    fn act(&self, sigma: &Perm, i: usize) -> SparseVec<F> {
        let (s, a, b) = self.split(i);
        let m = self.n1 + self.n2;
        let mask = self.subsets[s];
        let left_letters = mask_letters(mask);
        let right_letters: Vec<usize> = (0..m).filter(|x| mask >> x & 1 == 0).collect();
        let (pi1, img1) = restrict_and_standardize(sigma, &left_letters);
        let (pi2, _) = restrict_and_standardize(sigma, &right_letters);
        let new_mask = img1.iter().fold(0u64, |acc, &x| acc | 1 << x);
        let s2 = self.subset_index[&new_mask];
        self.tensor(s2, &self.left.act(&pi1, a), &self.right.act(&pi2, b))
    }
}

/// Direct sum of representations of the same degree.
pub struct DirectSum<'a, F: Field> {
    parts: Vec<&'a (dyn Representation<F> + 'a)>,
    offsets: Vec<usize>,
}

impl<'a, F: Field> DirectSum<'a, F> {
    pub fn new(parts: Vec<&'a (dyn Representation<F> + 'a)>) -> Self {
        assert!(!parts.is_empty());
        let deg = parts[0].degree();
        assert!(parts.iter().all(|p| p.degree() == deg), "degree mismatch");
        let mut offsets = vec![0];
        for p in &parts {
            offsets.push(offsets.last().unwrap() + p.dim());
        }
        DirectSum { parts, offsets }
    }
}

impl<F: Field> Representation<F> for DirectSum<'_, F> {
    fn degree(&self) -> usize {
        self.parts[0].degree()
    }

    fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn act(&self, sigma: &Perm, i: usize) -> SparseVec<F> {
        let k = self.offsets.partition_point(|&o| o <= i) - 1;
        let off = self.offsets[k];
        self.parts[k].act(sigma, i - off).map_indices(|j| j + off)
    }
}

/// Restriction to the subgroup S_r of S_m fixing the letters r..m.
pub struct Restriction<'a, F: Field> {
    parent: &'a (dyn Representation<F> + 'a),
    degree: usize,
}

impl<'a, F: Field> Restriction<'a, F> {
    pub fn new(parent: &'a (dyn Representation<F> + 'a), degree: usize) -> Self {
        assert!(degree <= parent.degree());
        Restriction { parent, degree }
    }

    fn extend(&self, sigma: &Perm) -> Perm {
        let mut images = sigma.images().to_vec();
        images.extend(self.degree..self.parent.degree());
        Perm::from_images(images)
    }
}

impl<F: Field> Representation<F> for Restriction<'_, F> {
    fn degree(&self) -> usize {
        self.degree
    }
    fn dim(&self) -> usize {
        self.parent.dim()
    }
    fn act(&self, sigma: &Perm, i: usize) -> SparseVec<F> {
        self.parent.act(&self.extend(sigma), i)
    }
    fn trace(&self, sigma: &Perm) -> F {
        self.parent.trace(&self.extend(sigma))
    }
}

/// The one-dimensional sign representation.
pub struct SignRep(pub usize);

impl<F: Field> Representation<F> for SignRep {
    fn degree(&self) -> usize {
        self.0
    }
    fn dim(&self) -> usize {
        1
    }
    fn act(&self, sigma: &Perm, _i: usize) -> SparseVec<F> {
        SparseVec::unit(0).scale(&F::from_i64(sigma.sign() as i64))
    }
}

/// The one-dimensional trivial representation.
pub struct TrivialRep(pub usize);

impl<F: Field> Representation<F> for TrivialRep {
    fn degree(&self) -> usize {
        self.0
    }
    fn dim(&self) -> usize {
        1
    }
    fn act(&self, _sigma: &Perm, _i: usize) -> SparseVec<F> {
        SparseVec::unit(0)
    }
}

/// A computation that can run over any field, so that it can be carried out
/// exactly over Q or twice over independent primes.
pub trait FieldTask: Sync {
    type Output: PartialEq + std::fmt::Debug + Send;
    fn run<F: Field>(&self) -> Result<Self::Output, Error>;
}

/// Runs `task` in the requested arithmetic. In multimodular mode the task is
/// run modulo 2^31 - 1 and 998244353 and the outputs must coincide.
pub fn run_in_mode<T: FieldTask>(task: &T, mode: ArithmeticMode) -> Result<T::Output, Error> {
    match mode {
        ArithmeticMode::Rational => task.run::<BigRational>(),
        ArithmeticMode::Multimodular => {
            let (a, b) = rayon::join(|| task.run::<F2147483647>(), || task.run::<F998244353>());
            Ok(agree(Some(a?), Some(b?), "modular results")?)
        }
    }
}

/// The integer value of an exact rational, if it is one.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{decompose, induction_product_character, sign_character};

    type Q = BigRational;

    #[test]
    fn sign_induced_to_regular() {
        let a = SignRep(1);
        let b = SignRep(1);
        let x: InducedModule<Q> = InducedModule::new(&a, &b);
        assert_eq!(Representation::<Q>::dim(&x), 2);
        let ch = character::<Q, _>(&x);
        assert_eq!(decompose(&ch).unwrap().to_string(), "2 + 1^2");
    }

    #[test]
    fn induced_character_matches_formula() {
        let a = SignRep(2);
        let b = TrivialRep(3);
        let x: InducedModule<Q> = InducedModule::new(&a, &b);
        let expected = induction_product_character(&sign_character(2), &crate::characters::trivial_character(3));
        assert_eq!(character::<Q, _>(&x), expected);
    }

    #[test]
    fn submodule_of_induced() {
        let a = TrivialRep(1);
        let b = TrivialRep(2);
        let x: InducedModule<Q> = InducedModule::new(&a, &b);
        // the sum of all basis vectors spans the trivial submodule
        let all = SparseVec::from_pairs((0..3).map(|i| (i, Q::from_integer(1.into()))).collect());
        let sub = Submodule::span(&x, [all]);
        assert_eq!(Representation::<Q>::dim(&sub), 1);
        let e0 = Submodule::span(&x, [SparseVec::unit(0)]);
        assert_eq!(Representation::<Q>::dim(&e0), 3);
        let ch = character::<Q, _>(&sub);
        assert_eq!(decompose(&ch).unwrap().to_string(), "3");
    }

    #[test]
    fn direct_sum_character_adds() {
        let s = SignRep(3);
        let t = TrivialRep(3);
        let d: DirectSum<Q> = DirectSum::new(vec![&s, &t]);
        assert_eq!(decompose(&character::<Q, _>(&d)).unwrap().to_string(), "3 + 1^3");
    }

    #[test]
    fn modular_characters_lift() {
        let s = SignRep(3);
        let a = character::<F998244353, _>(&s);
        assert_eq!(a, sign_character(3));
    }
}
