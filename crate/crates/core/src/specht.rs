//! Specht modules from column tabloids and Garnir relations, the b-entry
//! variant, and the operator φ_d on induction products.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{decompose, Decomposition};
use crate::combinatorics::{lr_coefficient, Partition};
use crate::error::{CombinatoricsError, Error};
use crate::linalg::{kernel_basis, rank, ArithmeticMode, Field, SparseMatrix, SparseVec, Subspace};
use crate::module::{
    character, run_in_mode, DirectSum, FieldTask, InducedModule, QuotientModule, Representation, Submodule,
};
use crate::perm::Perm;
use crate::tabloid::TabloidSpace;

pub type SpechtModule<F> = QuotientModule<F, TabloidSpace>;

/// Column tabloids of shape λ: columns left to right.
pub fn m_space(lambda: &Partition) -> TabloidSpace {
    TabloidSpace::new(lambda.column_lengths(), lambda.size(), 0)
}

fn check_column(space: &TabloidSpace, c: usize, lo: usize, hi: usize) -> Result<(), Error> {
    if c < lo || c > hi {
        return Err(Error::Verification(format!(
            "column {c} outside {lo}..={hi} for {} columns",
            space.num_columns()
        )));
    }
    Ok(())
}

/// `t̄ − Σ s̄` over the s obtained by exchanging an entry of column `c`
/// (1-based) with the top entry of column `c + 1`.
pub fn garnir_first<F: Field>(space: &TabloidSpace, t: &[u8], c: usize) -> Result<SparseVec<F>, Error> {
    check_column(space, c, 1, space.num_columns().saturating_sub(1))?;
    Ok(space.vector(&space.swap_with_top(t, c - 1, c)))
}

/// `(c−1) l_c t̄ − Σ s̄` over the s obtained by exchanging an entry of
/// column `c` (1-based, `c ≥ 2`) with an entry of an earlier column.
pub fn garnir_new<F: Field>(space: &TabloidSpace, t: &[u8], c: usize) -> Result<SparseVec<F>, Error> {
    check_column(space, c, 2, space.num_columns())?;
    let lc = space.lens()[c - 1] as i64;
    let earlier: Vec<usize> = (0..c - 1).collect();
    Ok(space.vector(&space.swap_with_columns(t, c - 1, &earlier, (c as i64 - 1) * lc)))
}

/// All first-kind Garnir relations of a tabloid space. Relations for a
/// tableau and its column permutations differ by more than a sign (the top
/// entry of column c+1 matters), so every choice of that top entry is used.
pub fn first_kind_relations<F: Field>(space: &TabloidSpace) -> Vec<SparseVec<F>> {
    (1..space.num_columns())
        .flat_map(|c| {
            space
                .with_each_top(c)
                .into_par_iter()
                .map(|t| space.vector(&space.swap_with_top(&t, c - 1, c)))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// All new-kind Garnir relations; column-strict tableaux suffice since the
/// relation of a column permutation of t is a sign multiple.
pub fn new_kind_relations<F: Field>(space: &TabloidSpace) -> Vec<SparseVec<F>> {
    (2..=space.num_columns())
        .flat_map(|c| {
            space
                .tableaux()
                .par_iter()
                .map(|t| garnir_new(space, t, c).expect("in range"))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// S^λ as column tabloids modulo first-kind Garnir relations.
pub fn specht_first<F: Field>(lambda: &Partition) -> Result<SpechtModule<F>, Error> {
    let space = m_space(lambda);
    let rel = first_kind_relations(&space);
    Ok(QuotientModule::from_generators(space, rel)?)
}

/// Column tabloids modulo new-kind Garnir relations.
pub fn specht_new<F: Field>(lambda: &Partition) -> Result<SpechtModule<F>, Error> {
    let space = m_space(lambda);
    let rel = new_kind_relations(&space);
    Ok(QuotientModule::from_generators(space, rel)?)
}

/// Outcome of comparing the two Garnir presentations of one shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationCheck {
    pub lambda: Partition,
    pub hook_dim: u128,
    pub first_dim: usize,
    pub new_dim: usize,
    /// The two relation subspaces of M^λ coincide.
    pub same_relations: bool,
    /// The character of the new-kind quotient is irreducible of type λ.
    pub irreducible: bool,
}

impl PresentationCheck {
    pub fn passed(&self) -> bool {
        self.first_dim as u128 == self.hook_dim
            && self.new_dim as u128 == self.hook_dim
            && self.same_relations
            && self.irreducible
    }
}

struct PresentationTask(Partition);

impl FieldTask for PresentationTask {
    type Output = PresentationCheck;

    fn run<F: Field>(&self) -> Result<PresentationCheck, Error> {
        let lambda = &self.0;
        let first = specht_first::<F>(lambda)?;
        let new = specht_new::<F>(lambda)?;
        let same = first.relations().contains_subspace(new.relations())
            && new.relations().contains_subspace(first.relations());
        let d = decompose(&character::<F, _>(&new))?;
        Ok(PresentationCheck {
            lambda: lambda.clone(),
            hook_dim: lambda.hook_length_dimension(),
            first_dim: first.dim(),
            new_dim: new.dim(),
            same_relations: same,
            irreducible: d == Decomposition::from_pairs(lambda.size(), [(lambda.clone(), 1)]),
        })
    }
}

/// Builds S^λ from both Garnir presentations and compares them.
pub fn presentation_check(lambda: &Partition, mode: ArithmeticMode) -> Result<PresentationCheck, Error> {
    run_in_mode(&PresentationTask(lambda.clone()), mode)
}

/// Ŝ^λ: column tabloids of shape λ filled with `1..N'` and `k` copies of
/// `b`, modulo first-kind Garnir relations, as an S_{N'}-module. A shape
/// with fewer than `k` columns has no fillings and gives the zero module.
pub fn hat_specht<F: Field>(lambda: &Partition, k: usize) -> Result<SpechtModule<F>, Error> {
    if lambda.size() < k {
        return Err(CombinatoricsError::SizeMismatch {
            expected: k,
            found: lambda.size(),
        }
        .into());
    }
    let space = TabloidSpace::new(lambda.column_lengths(), lambda.size() - k, k);
    let rel = first_kind_relations(&space);
    Ok(QuotientModule::from_generators(space, rel)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HatSpechtCheck {
    pub lambda: Partition,
    pub k: usize,
    pub dim: usize,
    /// Ŝ^λ decomposed as an S_{N'}-module.
    pub decomposition: Decomposition,
    /// S^{λ⁻} when λ has exactly k columns, zero otherwise.
    pub expected: Decomposition,
}

impl HatSpechtCheck {
    pub fn passed(&self) -> bool {
        self.decomposition == self.expected && self.dim as u128 == self.expected.dimension()
    }
}

struct HatSpechtTask(Partition, usize);

impl FieldTask for HatSpechtTask {
    type Output = HatSpechtCheck;

    fn run<F: Field>(&self) -> Result<HatSpechtCheck, Error> {
        let (lambda, k) = (&self.0, self.1);
        let m = hat_specht::<F>(lambda, k)?;
        let n2 = lambda.size() - k;
        let decomposition = if m.dim() == 0 {
            Decomposition::new(n2)
        } else {
            decompose(&character::<F, _>(&m))?
        };
        let expected = if lambda.num_columns() == k {
            Decomposition::from_pairs(n2, [(lambda.without_first_row(), 1)])
        } else {
            Decomposition::new(n2)
        };
        Ok(HatSpechtCheck {
            lambda: lambda.clone(),
            k,
            dim: m.dim(),
            decomposition,
            expected,
        })
    }
}

/// Compares Ŝ^λ (with `k` b's) against S^{λ⁻}.
pub fn hat_specht_check(lambda: &Partition, k: usize, mode: ArithmeticMode) -> Result<HatSpechtCheck, Error> {
    if lambda.num_columns() > k {
        return Err(Error::Verification(format!("{lambda} has more than {k} columns")));
    }
    run_in_mode(&HatSpechtTask(lambda.clone(), k), mode)
}

/// The matrix of φ_d = d n₂ I − Σ (i, j) over i ≤ n₁ < j, acting on the
/// right, computed from the rewriting
/// φ_d = d n₂ I − Σ_{S_n} (i,j) + Σ_{S_{n₁}} (i,j) + Σ_{S_{n₂}} (i,j),
/// where the first sum is central (a left action) and the last two act on
/// the factors. Column `c` holds the image of basis vector `c`.
pub fn phi_d<F: Field>(x: &InducedModule<'_, F>, d: usize) -> SparseMatrix<F> {
    let (n1, n2) = x.degrees();
    let n = n1 + n2;
    let all = transpositions(n, 0, n);
    let left = transpositions(n1, 0, n1);
    let right = transpositions(n2, 0, n2);
    let id1 = Perm::identity(n1);
    let id2 = Perm::identity(n2);
    let dn2 = F::from_i64((d * n2) as i64);
    let cols: Vec<SparseVec<F>> = (0..x.dim())
        .into_par_iter()
        .map(|c| {
            let mut v = SparseVec::unit(c).scale(&dn2);
            for t in &all {
                v = v.sub(&x.act(t, c));
            }
            for t in &left {
                v = v.add(&x.act_on_factors(t, &id2, c));
            }
            for t in &right {
                v = v.add(&x.act_on_factors(&id1, t, c));
            }
            v
        })
        .collect();
    SparseMatrix::from_columns(&cols, x.dim())
}

/// φ_d computed directly from the right action of the cross
/// transpositions (i, j), i < n₁ ≤ j.
pub fn phi_d_direct<F: Field>(x: &InducedModule<'_, F>, d: usize) -> SparseMatrix<F> {
    let (n1, n2) = x.degrees();
    let n = n1 + n2;
    let dn2 = F::from_i64((d * n2) as i64);
    let cols: Vec<SparseVec<F>> = (0..x.dim())
        .into_par_iter()
        .map(|c| {
            let mut v = SparseVec::unit(c).scale(&dn2);
            for i in 0..n1 {
                for j in n1..n {
                    v = v.sub(&x.act_right(&Perm::transposition(n, i, j), c));
                }
            }
            v
        })
        .collect();
    SparseMatrix::from_columns(&cols, x.dim())
}

fn transpositions(n: usize, lo: usize, hi: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    for i in lo..hi {
        for j in i + 1..hi {
            out.push(Perm::transposition(n, i, j));
        }
    }
    out
}

/// The scalar by which φ_d acts on the S^λ-isotypic part of
/// S^{λ₁} • S^{λ₂}: d n₂ − C(λ) + C(λ₁) + C(λ₂), with C the content sum.
pub fn phi_eigenvalue(lambda: &Partition, l1: &Partition, l2: &Partition, d: usize) -> i64 {
    (d * l2.size()) as i64 - lambda.content_sum() + l1.content_sum() + l2.content_sum()
}

/// Irreducibles S^λ of S^{λ₁} • S^{λ₂} with their multiplicities.
pub fn product_decomposition(l1: &Partition, l2: &Partition) -> Decomposition {
    let n = l1.size() + l2.size();
    Decomposition::from_pairs(
        n,
        Partition::all(n)
            .into_iter()
            .map(|l| {
                let c = lr_coefficient(&l, l1, l2).unwrap_or(0);
                (l, c as u64)
            })
            .collect::<Vec<_>>(),
    )
}

/// Result of checking φ_d on an induction product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiCheck {
    pub left: Vec<Partition>,
    pub right: Partition,
    pub d: usize,
    pub dim: usize,
    /// Every predicted scalar is nonnegative.
    pub nonnegative: bool,
    /// The matrices from the central rewriting and from the cross
    /// transpositions agree.
    pub formulas_agree: bool,
    /// For each scalar a: (a, predicted dim of the a-eigenspace, computed).
    pub eigenspaces: Vec<(i64, u128, usize)>,
    pub kernel: Decomposition,
    /// λ₁⧺λ₂ over the left constituents λ₁ with d columns compatible with
    /// the right factor.
    pub expected_kernel: Decomposition,
}

impl PhiCheck {
    pub fn passed(&self) -> bool {
        self.nonnegative
            && self.formulas_agree
            && self.eigenspaces.iter().all(|(_, p, c)| *p == *c as u128)
            && self.kernel == self.expected_kernel
    }
}

struct PhiTask {
    left: Vec<Partition>,
    right: Partition,
    d: usize,
}

impl FieldTask for PhiTask {
    type Output = PhiCheck;

    fn run<F: Field>(&self) -> Result<PhiCheck, Error> {
        let lefts = self.left.iter().map(specht_first::<F>).collect::<Result<Vec<_>, _>>()?;
        let refs: Vec<&dyn Representation<F>> = lefts.iter().map(|m| m as &dyn Representation<F>).collect();
        let y1 = DirectSum::new(refs);
        let y2 = specht_first::<F>(&self.right)?;
        let x = InducedModule::new(&y1, &y2);
        let phi = phi_d(&x, self.d);
        let formulas_agree = phi == phi_d_direct(&x, self.d);
        let n = x.degree();

        // predicted eigenvalues with multiplicities
        let mut predicted: BTreeMap<i64, u128> = BTreeMap::new();
        let mut expected_kernel = Decomposition::new(n);
        let mut nonnegative = true;
        for l1 in &self.left {
            for (l, mult) in product_decomposition(l1, &self.right).terms() {
                let a = phi_eigenvalue(l, l1, &self.right, self.d);
                nonnegative &= a >= 0;
                *predicted.entry(a).or_default() += mult as u128 * l.hook_length_dimension();
            }
            if l1.num_columns() == self.d && l1.is_compatible(&self.right) {
                expected_kernel.add(l1.concat(&self.right)?, 1);
            }
        }
        let eigenspaces = predicted
            .iter()
            .map(|(&a, &p)| {
                let shifted = shift(&phi, a);
                (a, p, x.dim() - rank(&shifted))
            })
            .collect();
        let ker = kernel_basis(&phi);
        let kernel = if ker.is_empty() {
            Decomposition::new(n)
        } else {
            let mut space = Subspace::new(x.dim());
            space.extend(ker)?;
            let sub = Submodule::from_subspace(&x, space)?;
            decompose(&character::<F, _>(&sub))?
        };
        Ok(PhiCheck {
            left: self.left.clone(),
            right: self.right.clone(),
            d: self.d,
            dim: x.dim(),
            nonnegative,
            formulas_agree,
            eigenspaces,
            kernel,
            expected_kernel,
        })
    }
}

/// φ − a I.
fn shift<F: Field>(phi: &SparseMatrix<F>, a: i64) -> SparseMatrix<F> {
    let fa = F::from_i64(a);
    let rows = phi
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| r.sub(&SparseVec::unit(i).scale(&fa)))
        .collect();
    SparseMatrix::from_rows(rows, phi.ncols())
}

/// Checks φ_d on (⊕ S^{λ₁}) • S^{λ₂}: eigenvalues, eigenspace dimensions
/// and the kernel as a module. `d` must be at least the number of columns
/// of every left constituent.
pub fn phi_check(left: &[Partition], right: &Partition, d: usize, mode: ArithmeticMode) -> Result<PhiCheck, Error> {
    if left.is_empty() {
        return Err(Error::Verification("empty left factor".into()));
    }
    if let Some(l) = left.iter().find(|l| l.num_columns() > d) {
        return Err(Error::Verification(format!("{l} has more than d = {d} columns")));
    }
    if left.iter().any(|l| l.size() != left[0].size()) {
        return Err(Error::Verification("left constituents of different degrees".into()));
    }
    run_in_mode(
        &PhiTask {
            left: left.to_vec(),
            right: right.clone(),
            d,
        },
        mode,
    )
}

/// Checks that the Garnir relations span an invariant subspace, for tests.
pub fn relations_invariant<F: Field>(m: &SpechtModule<F>) -> bool {
    m.check_invariance_full().is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn column_tabloid_counts() {
        assert_eq!(m_space(&p("1,1,1")).dim(), 1);
        assert_eq!(m_space(&p("2,1")).dim(), 3);
        assert_eq!(m_space(&p("2,2")).dim(), 6);
    }

    #[test]
    fn worked_garnir_relation() {
        let s = m_space(&p("3,2,1,1"));
        let t = s.parse_tableau("1,2,3,4|5,6|7").unwrap();
        let v: SparseVec<BigRational> = garnir_first(&s, &t, 1).unwrap();
        assert_eq!(v.nnz(), 5);
    }

    #[test]
    fn small_presentations_agree() {
        for l in ["1", "2", "1,1", "2,1", "2,2", "3,1", "2,1,1", "3,2", "2,2,1"] {
            let c = presentation_check(&p(l), ArithmeticMode::Rational).unwrap();
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn garnir_relations_are_invariant() {
        let m = specht_first::<BigRational>(&p("2,2,1")).unwrap();
        assert!(relations_invariant(&m));
    }

    #[test]
    fn hat_examples() {
        let c = hat_specht_check(&p("2,2,1"), 2, ArithmeticMode::Rational).unwrap();
        assert!(c.passed());
        assert_eq!(c.decomposition.to_string(), "21");
        let c = hat_specht_check(&p("3,1"), 3, ArithmeticMode::Rational).unwrap();
        assert!(c.passed());
        assert_eq!(c.dim, 1);
        let c = hat_specht_check(&p("2,2"), 3, ArithmeticMode::Rational).unwrap();
        assert!(c.passed());
        assert_eq!(c.dim, 0);
        assert!(hat_specht_check(&p("3"), 2, ArithmeticMode::Rational).is_err());
    }

    #[test]
    fn phi_examples() {
        let c = phi_check(&[p("1")], &p("1"), 1, ArithmeticMode::Rational).unwrap();
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.kernel.dimension(), 1);
        let c = phi_check(&[p("2,1,1")], &p("1"), 2, ArithmeticMode::Rational).unwrap();
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.kernel.dimension(), 6);
        let c = phi_check(&[p("2,1,1")], &p("1"), 3, ArithmeticMode::Rational).unwrap();
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.kernel.dimension(), 0);
    }

    #[test]
    fn eigenvalue_formula() {
        // λ₁ ⧺ λ₂ lies in the kernel when λ₁ has d columns
        let (l1, l2) = (p("2,1"), p("1"));
        assert_eq!(phi_eigenvalue(&p("3,1"), &l1, &l2, 2), 0);
        assert!(phi_eigenvalue(&p("2,1,1"), &l1, &l2, 2) > 0);
    }
}
