use rayon::prelude::*;

use super::{Field, SparseMatrix, SparseVec};
use crate::error::LinalgError;

/// Reusable dense accumulator for reductions against a subspace.
pub struct Scratch<F> {
    values: Vec<F>,
    touched: Vec<usize>,
    live: Vec<bool>,
}

impl<F: Field> Scratch<F> {
    pub fn new(dim: usize) -> Self {
        Scratch {
            values: vec![F::zero(); dim],
            touched: Vec::new(),
            live: vec![false; dim],
        }
    }

    fn add(&mut self, i: usize, a: &F, b: &F) {
        if !self.live[i] {
            self.live[i] = true;
            self.touched.push(i);
        }
        self.values[i].add_mul_assign(a, b);
    }

    fn load(&mut self, v: &SparseVec<F>) {
        for (i, x) in v.iter() {
            self.live[*i] = true;
            self.touched.push(*i);
            self.values[*i] = x.clone();
        }
    }

    fn drain(&mut self) -> SparseVec<F> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.live[i] = false;
            let x = std::mem::replace(&mut self.values[i], F::zero());
            if !x.is_zero() {
                out.push((i, x));
            }
        }
        self.touched.clear();
        SparseVec::from_sorted(out)
    }
}

/// A subspace of F^dim kept in reduced row echelon form: every row has a
/// pivot entry equal to 1 at its leading index, and each pivot column is
/// zero in every other row.
#[derive(Clone, Debug)]
pub struct Subspace<F> {
    dim: usize,
    rows: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
    row_of_pivot: Vec<Option<u32>>,
}

impl<F: Field> Subspace<F> {
    pub fn new(dim: usize) -> Self {
        Subspace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_pivot: vec![None; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows in insertion order, each with leading entry 1.
    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_pivot[col].is_some()
    }

    /// The row whose pivot is `col`, if any.
    pub fn pivot_row(&self, col: usize) -> Option<&SparseVec<F>> {
        self.row_of_pivot[col].map(|r| &self.rows[r as usize])
    }

    /// Columns without a pivot, increasing; their unit vectors span a
    /// complement of the subspace.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| self.row_of_pivot[c].is_none()).collect()
    }

    pub fn scratch(&self) -> Scratch<F> {
        Scratch::new(self.dim)
    }

    fn check_range(&self, v: &SparseVec<F>) -> Result<(), LinalgError> {
        match v.max_index() {
            Some(m) if m >= self.dim => Err(LinalgError::OutOfRange {
                index: m,
                dim: self.dim,
            }),
            _ => Ok(()),
        }
    }

    /// The normal form of `v` modulo the subspace: the unique vector
    /// congruent to `v` supported on free columns.
    pub fn reduce_with(&self, v: &SparseVec<F>, scratch: &mut Scratch<F>) -> SparseVec<F> {
        scratch.load(v);
        // One pass suffices: subtracting a reduced row never creates entries
        // in other pivot columns.
        for (i, x) in v.iter() {
            if let Some(r) = self.row_of_pivot[*i] {
                let c = x.neg();
                for (j, y) in self.rows[r as usize].iter() {
                    scratch.add(*j, y, &c);
                }
            }
        }
        scratch.drain()
    }

    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        self.reduce_with(v, &mut self.scratch())
    }

    /// Coefficient of the free column `col` in the normal form of `v`.
    pub fn reduced_coefficient(&self, v: &SparseVec<F>, col: usize) -> F {
        debug_assert!(!self.is_pivot(col));
        let mut acc = v.get(col);
        for (i, x) in v.iter() {
            if let Some(r) = self.row_of_pivot[*i] {
                let y = self.rows[r as usize].get(col);
                if !y.is_zero() {
                    acc = acc.sub(&x.mul(&y));
                }
            }
        }
        acc
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec<F>) -> Result<bool, LinalgError> {
        self.check_range(v)?;
        let mut scratch = self.scratch();
        Ok(self.insert_with(v, &mut scratch))
    }

    fn insert_with(&mut self, v: &SparseVec<F>, scratch: &mut Scratch<F>) -> bool {
        let w = self.reduce_with(v, scratch);
        self.insert_reduced(w)
    }

    /// Inserts a vector already in normal form.
    fn insert_reduced(&mut self, w: SparseVec<F>) -> bool {
        let Some(p) = w.leading_index() else {
            return false;
        };
        let inv = w.entries()[0].1.inv();
        let w = w.scale(&inv);
        for row in self.rows.iter_mut() {
            let c = row.get(p);
            if !c.is_zero() {
                *row = row.add_scaled(&w, &c.neg());
            }
        }
        self.row_of_pivot[p] = Some(self.rows.len() as u32);
        self.pivots.push(p);
        self.rows.push(w);
        true
    }

    /// Adds many vectors. Batches are reduced in parallel against the current
    /// rows, then survivors are inserted one at a time; the final subspace
    /// does not depend on the batching.
    pub fn extend<I>(&mut self, vectors: I) -> Result<(), LinalgError>
    where
        I: IntoIterator<Item = SparseVec<F>>,
    {
        const BATCH: usize = 512;
        let mut batch = Vec::with_capacity(BATCH);
        let mut scratch = self.scratch();
        let mut it = vectors.into_iter();
        loop {
            batch.clear();
            batch.extend(it.by_ref().take(BATCH));
            if batch.is_empty() {
                break;
            }
            for v in &batch {
                self.check_range(v)?;
            }
            let this = &*self;
            let reduced: Vec<SparseVec<F>> = batch
                .par_iter()
                .map_init(|| this.scratch(), |s, v| this.reduce_with(v, s))
                .filter(|w| !w.is_zero())
                .collect();
            for w in reduced {
                self.insert_with(&w, &mut scratch);
            }
        }
        Ok(())
    }

    /// Coordinates of a vector of the subspace in terms of `rows()`.
    /// Returns `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &SparseVec<F>) -> Option<Vec<(usize, F)>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            v.iter()
                .filter_map(|(i, x)| self.row_of_pivot[*i].map(|r| (r as usize, x.clone())))
                .collect(),
        )
    }

    /// Whether `other` ⊆ `self`.
    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.rows.par_iter().all(|r| self.contains(r))
    }

    /// Checks that every generator image lies in the subspace.
    pub fn check_invariant(&self, images: &[SparseVec<F>]) -> Result<(), LinalgError> {
        let bad = images
            .par_iter()
            .enumerate()
            .map_init(|| self.scratch(), |s, (k, v)| (k, self.reduce_with(v, s).is_zero()))
            .filter(|(_, ok)| !ok)
            .map(|(k, _)| k)
            .min();
        match bad {
            Some(generator) => Err(LinalgError::NotInvariant { generator }),
            None => Ok(()),
        }
    }

    pub fn to_matrix(&self) -> SparseMatrix<F> {
        SparseMatrix::from_rows(self.rows.clone(), self.dim)
    }
}

/// Row space of `m` in reduced echelon form.
pub fn echelonize<F: Field>(m: &SparseMatrix<F>) -> Subspace<F> {
    let mut s = Subspace::new(m.ncols());
    s.extend(m.rows().iter().cloned()).expect("rows within range");
    s
}

pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    echelonize(m).rank()
}

/// Basis of `{v : m v = 0}`, one vector per free column of the echelon form.
pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>) -> Vec<SparseVec<F>> {
    let s = echelonize(m);
    let free = s.free_columns();
    let mut index_of_free = vec![usize::MAX; m.ncols()];
    for (k, &f) in free.iter().enumerate() {
        index_of_free[f] = k;
    }
    let mut pairs: Vec<Vec<(usize, F)>> = free.iter().map(|&f| vec![(f, F::one())]).collect();
    for (row, &p) in s.rows().iter().zip(s.pivots()) {
        for (j, x) in row.iter() {
            if *j != p {
                pairs[index_of_free[*j]].push((p, x.neg()));
            }
        }
    }
    let basis: Vec<SparseVec<F>> = pairs.into_iter().map(SparseVec::from_pairs).collect();
    for v in &basis {
        assert!(m.mul_vec(v).is_zero(), "kernel vector fails M v = 0");
    }
    basis
}

pub fn quotient_dimension<F: Field>(ambient_dim: usize, relations: &Subspace<F>) -> usize {
    assert_eq!(ambient_dim, relations.dim());
    ambient_dim - relations.rank()
}

/// Matrix of a linear map on the quotient by `relations`, in the basis of
/// free columns. `action` gives the image of each ambient basis vector.
/// Fails if the map does not preserve the relation subspace.
pub fn induced_action_on_quotient<F: Field>(
    relations: &Subspace<F>,
    action: impl Fn(usize) -> SparseVec<F> + Sync,
) -> Result<SparseMatrix<F>, LinalgError> {
    let images_of_relations: Vec<SparseVec<F>> =
        relations.rows().par_iter().map(|r| apply_linear(r, &action)).collect();
    relations.check_invariant(&images_of_relations)?;
    let free = relations.free_columns();
    let mut position = vec![usize::MAX; relations.dim()];
    for (k, &f) in free.iter().enumerate() {
        position[f] = k;
    }
    let columns: Vec<SparseVec<F>> = free
        .par_iter()
        .map_init(
            || relations.scratch(),
            |s, &f| relations.reduce_with(&action(f), s).map_indices(|i| position[i]),
        )
        .collect();
    Ok(SparseMatrix::from_columns(&columns, free.len()))
}

/// Applies the linear extension of a basis map to `v`.
pub fn apply_linear<F: Field>(v: &SparseVec<F>, action: impl Fn(usize) -> SparseVec<F>) -> SparseVec<F> {
    let mut pairs = Vec::new();
    for (i, x) in v.iter() {
        for (j, y) in action(*i).iter() {
            pairs.push((*j, y.mul(x)));
        }
    }
    SparseVec::from_pairs(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::F998244353;
    use num_rational::BigRational;

    type Q = BigRational;

    fn qv(pairs: &[(usize, i64)]) -> SparseVec<Q> {
        SparseVec::from_pairs(pairs.iter().map(|&(i, v)| (i, Q::from_integer(v.into()))).collect())
    }

    #[test]
    fn zero_and_identity() {
        let z: SparseMatrix<Q> = SparseMatrix::from_rows(vec![SparseVec::zero(); 3], 4);
        assert_eq!(rank(&z), 0);
        assert_eq!(rank(&SparseMatrix::<Q>::identity(5)), 5);
        assert!(kernel_basis(&SparseMatrix::<Q>::identity(4)).is_empty());
    }

    #[test]
    fn two_by_two_kernel() {
        // I - (1 2) on a 2-dim space
        let m = SparseMatrix::from_rows(vec![qv(&[(0, 1), (1, -1)]), qv(&[(0, -1), (1, 1)])], 2);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], qv(&[(0, 1), (1, 1)]));
    }

    #[test]
    fn rref_is_reduced_and_idempotent() {
        let m = SparseMatrix::from_rows(
            vec![
                qv(&[(0, 2), (1, 4), (3, 2)]),
                qv(&[(1, 1), (2, 1)]),
                qv(&[(0, 1), (2, -2), (3, 1)]),
                qv(&[(3, 5)]),
            ],
            4,
        );
        let s = echelonize(&m);
        assert_eq!(s.rank(), 3);
        for (row, &p) in s.rows().iter().zip(s.pivots()) {
            assert!(row.get(p).is_one());
            for &q in s.pivots() {
                if q != p {
                    assert!(row.get(q).is_zero());
                }
            }
        }
        let again = echelonize(&s.to_matrix());
        let mut a: Vec<_> = s.rows().to_vec();
        let mut b: Vec<_> = again.rows().to_vec();
        a.sort_by_key(|r| r.leading_index());
        b.sort_by_key(|r| r.leading_index());
        assert_eq!(a, b);
        assert_eq!(quotient_dimension(4, &s), 1);
    }

    #[test]
    fn reduced_coefficient_matches_reduce() {
        let mut s = Subspace::<Q>::new(5);
        s.insert(&qv(&[(0, 1), (2, 3), (4, 1)])).unwrap();
        s.insert(&qv(&[(1, 2), (2, 1)])).unwrap();
        let v = qv(&[(0, 1), (1, 1), (3, 7)]);
        let r = s.reduce(&v);
        for f in s.free_columns() {
            assert_eq!(s.reduced_coefficient(&v, f), r.get(f));
        }
        assert!(s.insert(&qv(&[(9, 1)])).is_err());
    }

    #[test]
    fn induced_action_identity_and_sign() {
        let mut s = Subspace::<Q>::new(2);
        s.insert(&qv(&[(0, 1), (1, 1)])).unwrap();
        // swap acts on e0 + e1 invariantly; quotient is spanned by e1 with swap acting by -1
        let m = induced_action_on_quotient(&s, |i| SparseVec::unit(1 - i)).unwrap();
        assert_eq!(m.trace(), Q::from_integer((-1).into()));
        let id = induced_action_on_quotient(&s, SparseVec::unit).unwrap();
        assert_eq!(id, SparseMatrix::identity(1));
        let bad = induced_action_on_quotient(&s, |i| if i == 0 { SparseVec::unit(0) } else { SparseVec::zero() });
        assert!(bad.is_err());
    }

    #[test]
    fn modular_field_works_too() {
        type F = F998244353;
        let m = SparseMatrix::from_rows(
            vec![
                SparseVec::from_pairs(vec![(0, F::from_i64(1)), (1, F::from_i64(2))]),
                SparseVec::from_pairs(vec![(0, F::from_i64(2)), (1, F::from_i64(4))]),
            ],
            2,
        );
        assert_eq!(rank(&m), 1);
        assert_eq!(kernel_basis(&m).len(), 1);
    }
}
