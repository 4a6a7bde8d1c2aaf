use std::fmt;

use super::Field;

/// A sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> SparseVec<F> {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// The standard basis vector `e_i`.
    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, F::one())],
        }
    }

    /// From arbitrary (index, value) pairs; duplicates are summed, zeros dropped.
    pub fn from_pairs(mut pairs: Vec<(usize, F)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, F)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w = w.add(&v),
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    /// From entries already sorted by strictly increasing index and nonzero.
    pub fn from_sorted(entries: Vec<(usize, F)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(values: &[F]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, F)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> F {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => F::zero(),
        }
    }

    /// Smallest index with a nonzero entry.
    pub fn leading_index(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.neg())).collect(),
        }
    }

    /// `self + c * other`, by a sorted merge.
    pub fn add_scaled(&self, other: &Self, c: &F) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let ib = other.entries.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, other.entries[b].1.mul(c)));
                b += 1;
            } else {
                let mut v = self.entries[a].1.clone();
                v.add_mul_assign(&other.entries[b].1, c);
                if !v.is_zero() {
                    out.push((ia, v));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &F::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &F::one().neg())
    }

    pub fn dot(&self, other: &Self) -> F {
        let mut acc = F::zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, ib) = (self.entries[a].0, other.entries[b].0);
            if ia < ib {
                a += 1;
            } else if ib < ia {
                b += 1;
            } else {
                acc.add_mul_assign(&self.entries[a].1, &other.entries[b].1);
                a += 1;
                b += 1;
            }
        }
        acc
    }

    /// Reindexes through `f`; the result is re-sorted and duplicates combined.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.entries.iter().map(|(i, v)| (f(*i), v.clone())).collect())
    }

    /// Converts the scalars to another field.
    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseVec<G> {
        SparseVec::from_pairs(self.entries.iter().map(|(i, v)| (*i, f(v))).collect())
    }
}

impl<F: Field> fmt::Display for SparseVec<F> {
    /// The dump format: space-separated `index:value` pairs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(i, v)| format!("{i}:{v}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl<F: Field> FromIterator<(usize, F)> for SparseVec<F> {
    fn from_iter<T: IntoIterator<Item = (usize, F)>>(iter: T) -> Self {
        Self::from_pairs(iter.into_iter().collect())
    }
}

/// A sparse matrix stored by rows.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseMatrix<F> {
    rows: Vec<SparseVec<F>>,
    ncols: usize,
}

impl<F: Field> SparseMatrix<F> {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix {
            rows: Vec::new(),
            ncols,
        }
    }

    pub fn from_rows(rows: Vec<SparseVec<F>>, ncols: usize) -> Self {
        for r in &rows {
            if let Some(m) = r.max_index() {
                assert!(m < ncols, "column {m} out of range {ncols}");
            }
        }
        SparseMatrix { rows, ncols }
    }

    /// The matrix whose `c`-th column is `columns[c]`.
    pub fn from_columns(columns: &[SparseVec<F>], nrows: usize) -> Self {
        let mut rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); nrows];
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col.iter() {
                rows[*r].push((c, v.clone()));
            }
        }
        SparseMatrix {
            rows: rows.into_iter().map(SparseVec::from_sorted).collect(),
            ncols: columns.len(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: (0..n).map(SparseVec::unit).collect(),
            ncols: n,
        }
    }

    pub fn push_row(&mut self, row: SparseVec<F>) {
        if let Some(m) = row.max_index() {
            assert!(m < self.ncols, "column {m} out of range {}", self.ncols);
        }
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn mul_vec(&self, v: &SparseVec<F>) -> SparseVec<F> {
        SparseVec::from_sorted(
            self.rows
                .iter()
                .enumerate()
                .filter_map(|(i, r)| {
                    let d = r.dot(v);
                    (!d.is_zero()).then_some((i, d))
                })
                .collect(),
        )
    }

    pub fn transpose(&self) -> Self {
        Self::from_columns(&self.rows, self.ncols)
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.rows[r].get(c)
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for (i, r) in self.rows.iter().enumerate() {
            t = t.add(&r.get(i));
        }
        t
    }

    /// The dump format: one row per line.
    pub fn dump(&self) -> String {
        self.rows.iter().map(|r| format!("{r}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn merge_and_cancel() {
        let a = SparseVec::from_pairs(vec![(3, q(1, 1)), (1, q(2, 1)), (3, q(1, 2))]);
        assert_eq!(a.entries(), &[(1, q(2, 1)), (3, q(3, 2))]);
        let b = SparseVec::from_pairs(vec![(3, q(3, 2)), (5, q(1, 1))]);
        let d = a.sub(&b);
        assert_eq!(d.entries(), &[(1, q(2, 1)), (5, q(-1, 1))]);
        assert_eq!(a.dot(&b), q(9, 4));
        assert_eq!(format!("{}", d), "1:2 5:-1");
        assert_eq!(format!("{}", a), "1:2 3:3/2");
    }

    #[test]
    fn matrix_basics() {
        let m = SparseMatrix::from_rows(
            vec![
                SparseVec::from_pairs(vec![(0, q(1, 1)), (2, q(2, 1))]),
                SparseVec::from_pairs(vec![(1, q(3, 1))]),
            ],
            3,
        );
        let t = m.transpose();
        assert_eq!(t.nrows(), 3);
        assert_eq!(t.get(2, 0), q(2, 1));
        assert_eq!(t.transpose(), m);
        let v = SparseVec::from_pairs(vec![(0, q(1, 1)), (1, q(1, 1)), (2, q(1, 1))]);
        assert_eq!(m.mul_vec(&v).entries(), &[(0, q(3, 1)), (1, q(3, 1))]);
        assert_eq!(m.dump(), "0:1 2:2\n1:3\n");
    }
}
