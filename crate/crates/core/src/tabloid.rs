//! Column tabloids: fillings of an ordered list of columns, modulo
//! antisymmetry within each column. Shared by ordinary and tree Specht
//! modules.

use std::fmt;

use crate::error::TreeError;
use crate::linalg::{Field, Interner, SparseVec};
use crate::module::AmbientAction;
use crate::perm::{sort_with_sign, Perm};

/// The entry `b`, which may be repeated across columns and is fixed by the
/// group. It sorts below every ordinary entry of its column.
pub const B_ENTRY: u8 = u8::MAX;

/// The span of column tabloids of given column lengths, filled with the
/// letters `0..letters` once each and `b_count` copies of `b`.
#[derive(Clone, Debug)]
pub struct TabloidSpace {
    lens: Vec<usize>,
    offsets: Vec<usize>,
    letters: usize,
    b_count: usize,
    basis: Interner<Vec<u8>>,
}

impl TabloidSpace {
    pub fn new(lens: Vec<usize>, letters: usize, b_count: usize) -> Self {
        assert_eq!(lens.iter().sum::<usize>(), letters + b_count, "size mismatch");
        assert!(letters < B_ENTRY as usize);
        let mut offsets = vec![0];
        for l in &lens {
            offsets.push(offsets.last().unwrap() + l);
        }
        let mut s = TabloidSpace {
            lens,
            offsets,
            letters,
            b_count,
            basis: Interner::new(),
        };
        let mut cur = Vec::with_capacity(letters + b_count);
        let all = if letters == 64 { u64::MAX } else { (1u64 << letters) - 1 };
        s.enumerate(0, all, b_count, &mut cur);
        s
    }

    fn enumerate(&mut self, col: usize, remaining: u64, bs: usize, cur: &mut Vec<u8>) {
        if col == self.lens.len() {
            if remaining == 0 && bs == 0 {
                self.basis.intern(cur.clone());
            }
            return;
        }
        let len = self.lens[col];
        let avail: Vec<u8> = (0..64u8).filter(|i| remaining >> i & 1 == 1).collect();
        for with_b in [false, true] {
            if with_b && (bs == 0 || len == 0) {
                continue;
            }
            let need = len - with_b as usize;
            if need > avail.len() {
                continue;
            }
            for choice in combinations(&avail, need) {
                let mask = choice.iter().fold(0u64, |a, &x| a | 1 << x);
                let before = cur.len();
                cur.extend_from_slice(&choice);
                if with_b {
                    cur.push(B_ENTRY);
                }
                self.enumerate(col + 1, remaining & !mask, bs - with_b as usize, cur);
                cur.truncate(before);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn lens(&self) -> &[usize] {
        &self.lens
    }

    pub fn num_columns(&self) -> usize {
        self.lens.len()
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn b_count(&self) -> usize {
        self.b_count
    }

    /// Column `c` of a (flattened) tableau.
    pub fn column<'a>(&self, t: &'a [u8], c: usize) -> &'a [u8] {
        &t[self.offsets[c]..self.offsets[c + 1]]
    }

    pub fn column_range(&self, c: usize) -> std::ops::Range<usize> {
        self.offsets[c]..self.offsets[c + 1]
    }

    /// The column-strict tableau of basis element `i`.
    pub fn tableau(&self, i: usize) -> &[u8] {
        self.basis.symbol(i)
    }

    pub fn tableaux(&self) -> &[Vec<u8>] {
        self.basis.symbols()
    }

    /// Sorts each column; returns the basis index and sign, or `None` when
    /// a column has a repeated entry (the tabloid is zero).
    pub fn canonical(&self, t: &[u8]) -> Option<(usize, i32)> {
        let mut out = Vec::with_capacity(t.len());
        let mut sign = 1;
        for c in 0..self.lens.len() {
            let (sorted, s) = sort_with_sign(self.column(t, c));
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return None;
            }
            sign *= s;
            out.extend(sorted);
        }
        let i = self.basis.get(&out).expect("valid filling");
        Some((i, sign))
    }

    /// The vector Σ c · t̄ over the given (tableau, coefficient) terms.
    pub fn vector<F: Field>(&self, terms: &[(Vec<u8>, i64)]) -> SparseVec<F> {
        SparseVec::from_pairs(
            terms
                .iter()
                .filter_map(|(t, c)| self.canonical(t).map(|(i, s)| (i, F::from_i64(c * s as i64))))
                .collect(),
        )
    }

    /// Parses `1,2,3,4|5,6|7` (1-based entries, `b` allowed).
    pub fn parse_tableau(&self, s: &str) -> Result<Vec<u8>, TreeError> {
        let bad = || TreeError::InvalidTableau(s.to_string());
        let cols: Vec<&str> = s.split('|').collect();
        if cols.len() != self.lens.len() {
            return Err(bad());
        }
        let mut out = Vec::new();
        for (c, col) in cols.iter().enumerate() {
            let entries: Vec<&str> = col.split(',').map(str::trim).filter(|x| !x.is_empty()).collect();
            if entries.len() != self.lens[c] {
                return Err(bad());
            }
            for e in entries {
                if e == "b" {
                    out.push(B_ENTRY);
                } else {
                    let v: usize = e.parse().map_err(|_| bad())?;
                    if v == 0 || v > self.letters {
                        return Err(bad());
                    }
                    out.push((v - 1) as u8);
                }
            }
        }
        let mut seen: Vec<u8> = out.iter().copied().filter(|&x| x != B_ENTRY).collect();
        seen.sort_unstable();
        seen.dedup();
        let bs = out.iter().filter(|&&x| x == B_ENTRY).count();
        if seen.len() != self.letters || bs != self.b_count {
            return Err(bad());
        }
        Ok(out)
    }

    pub fn format_tableau(&self, t: &[u8]) -> String {
        TableauDisplay { space: self, t }.to_string()
    }

    /// `t̄ − Σ s̄` over the tableaux s obtained by exchanging one entry of
    /// column `a` with the top entry of column `p`.
    pub fn swap_with_top(&self, t: &[u8], a: usize, p: usize) -> Vec<(Vec<u8>, i64)> {
        let top = self.offsets[p];
        let mut terms = vec![(t.to_vec(), 1)];
        for x in self.column_range(a) {
            let mut s = t.to_vec();
            s.swap(x, top);
            terms.push((s, -1));
        }
        terms
    }

    /// `coeff · t̄ − Σ s̄` over the tableaux s obtained by exchanging any
    /// entry of column `a` with any entry of the columns `others`.
    pub fn swap_with_columns(&self, t: &[u8], a: usize, others: &[usize], coeff: i64) -> Vec<(Vec<u8>, i64)> {
        let mut terms = vec![(t.to_vec(), coeff)];
        for x in self.column_range(a) {
            for &c in others {
                for y in self.column_range(c) {
                    let mut s = t.to_vec();
                    s.swap(x, y);
                    terms.push((s, -1));
                }
            }
        }
        terms
    }

    /// For every column-strict tableau, the variants obtained by moving each
    /// entry of column `p` to its top (keeping the order of the others).
    pub fn with_each_top(&self, p: usize) -> Vec<Vec<u8>> {
        let r = self.column_range(p);
        let mut out = Vec::new();
        for t in self.tableaux() {
            for x in r.clone() {
                let mut s = t.clone();
                s[r.start..=x].rotate_right(1);
                out.push(s);
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

struct TableauDisplay<'a> {
    space: &'a TabloidSpace,
    t: &'a [u8],
}

impl fmt::Display for TableauDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 0..self.space.num_columns() {
            if c > 0 {
                write!(f, "|")?;
            }
            let col: Vec<String> = self
                .space
                .column(self.t, c)
                .iter()
                .map(|&x| {
                    if x == B_ENTRY {
                        "b".to_string()
                    } else {
                        (x as usize + 1).to_string()
                    }
                })
                .collect();
            write!(f, "{}", col.join(","))?;
        }
        Ok(())
    }
}

impl<F: Field> AmbientAction<F> for TabloidSpace {
    fn degree(&self) -> usize {
        self.letters
    }

    fn ambient_dim(&self) -> usize {
        self.dim()
    }

    fn act_ambient(&self, sigma: &Perm, col: usize) -> SparseVec<F> {
        let t: Vec<u8> = self
            .tableau(col)
            .iter()
            .map(|&x| if x == B_ENTRY { x } else { sigma.apply(x as usize) as u8 })
            .collect();
        match self.canonical(&t) {
            Some((i, s)) => SparseVec::unit(i).scale(&F::from_i64(s as i64)),
            None => SparseVec::zero(),
        }
    }
}

/// All `r`-element subsequences of `items`, in lexicographic order.
pub fn combinations<T: Clone>(items: &[T], r: usize) -> Vec<Vec<T>> {
    fn rec<T: Clone>(items: &[T], r: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..=items.len() - (r - cur.len()) {
            cur.push(items[i].clone());
            rec(items, r, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= items.len() {
        rec(items, r, 0, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(&[1, 2, 3, 4], 2).len(), 6);
        assert_eq!(combinations(&[1, 2, 3], 0), vec![Vec::<i32>::new()]);
        assert_eq!(combinations(&[1, 2, 3], 3), vec![vec![1, 2, 3]]);
        assert!(combinations(&[1, 2], 3).is_empty());
    }

    #[test]
    fn multinomial_dimensions() {
        assert_eq!(TabloidSpace::new(vec![3], 3, 0).dim(), 1);
        assert_eq!(TabloidSpace::new(vec![2, 1], 3, 0).dim(), 3);
        assert_eq!(TabloidSpace::new(vec![2, 2], 4, 0).dim(), 6);
        // b entries: at most one per column
        assert_eq!(TabloidSpace::new(vec![2, 1], 1, 2).dim(), 1);
        assert_eq!(TabloidSpace::new(vec![2, 2], 2, 2).dim(), 2);
        assert_eq!(TabloidSpace::new(vec![1], 0, 1).dim(), 1);
    }

    #[test]
    fn canonical_sign_and_zero() {
        let s = TabloidSpace::new(vec![2, 1], 3, 0);
        let t = s.parse_tableau("2,1|3").unwrap();
        let (i, sign) = s.canonical(&t).unwrap();
        assert_eq!(sign, -1);
        assert_eq!(s.format_tableau(s.tableau(i)), "1,2|3");
        let h = TabloidSpace::new(vec![2, 1], 1, 2);
        assert!(h.canonical(&[B_ENTRY, B_ENTRY, 0]).is_none());
        let v: SparseVec<BigRational> = s.vector(&s.swap_with_top(&t, 0, 1));
        assert_eq!(v.nnz(), 3);
    }

    #[test]
    fn tops_cover_each_entry() {
        let s = TabloidSpace::new(vec![1, 2], 3, 0);
        // 3 column-strict tableaux, each with two choices of top entry
        assert_eq!(s.with_each_top(1).len(), 6);
    }
}
