use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::Partition;
use crate::error::CombinatoricsError;

/// A filling of a Young diagram, stored row-major. Entries may repeat.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungTableau {
    shape: Partition,
    entries: Vec<usize>,
}

impl YoungTableau {
    pub fn new(shape: Partition, entries: Vec<usize>) -> Result<Self, CombinatoricsError> {
        if entries.len() != shape.size() {
            return Err(CombinatoricsError::SizeMismatch {
                expected: shape.size(),
                found: entries.len(),
            });
        }
        Ok(YoungTableau { shape, entries })
    }

    /// Builds a tableau from its rows.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, CombinatoricsError> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        Ok(YoungTableau {
            shape,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.shape.len());
        let mut pos = 0;
        for &len in self.shape.parts() {
            out.push(self.entries[pos..pos + len].to_vec());
            pos += len;
        }
        out
    }

    /// Columns, left to right, each read top to bottom.
    pub fn columns(&self) -> Vec<Vec<usize>> {
        let rows = self.rows();
        (0..self.shape.num_columns())
            .map(|c| rows.iter().take_while(|r| r.len() > c).map(|r| r[c]).collect())
            .collect()
    }

    pub fn get(&self, r: usize, c: usize) -> usize {
        let offset: usize = self.shape.parts()[..r].iter().sum();
        self.entries[offset + c]
    }

    /// Rows and columns strictly increase and the entries are exactly 1..=n.
    pub fn is_standard(&self) -> bool {
        let n = self.entries.len();
        let mut seen = vec![false; n + 1];
        for &e in &self.entries {
            if e == 0 || e > n || seen[e] {
                return false;
            }
            seen[e] = true;
        }
        self.rows().iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
            && self.columns().iter().all(|c| c.windows(2).all(|w| w[0] < w[1]))
    }

    /// Row index of each entry of a standard tableau, indexed by entry value.
    fn row_of(&self) -> Vec<usize> {
        let mut row = vec![0; self.entries.len() + 1];
        for (r, rv) in self.rows().iter().enumerate() {
            for &e in rv {
                row[e] = r;
            }
        }
        row
    }

    /// Descent set: entries `j` with `j + 1` in a strictly lower row.
    pub fn descents(&self) -> Result<Vec<usize>, CombinatoricsError> {
        if !self.is_standard() {
            return Err(CombinatoricsError::NotStandard);
        }
        let row = self.row_of();
        Ok((1..self.entries.len()).filter(|&j| row[j + 1] > row[j]).collect())
    }

    /// Sum of the descents.
    pub fn major_index(&self) -> Result<usize, CombinatoricsError> {
        Ok(self.descents()?.iter().sum())
    }
}

impl Serialize for YoungTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for YoungTableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<usize>>::deserialize(d)?;
        YoungTableau::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// All standard Young tableaux of shape `shape`, in lexicographic order of
/// their row-major entry sequences.
pub fn syt_enumerate(shape: &Partition) -> Vec<YoungTableau> {
    // Place 1..=n one at a time into a corner, then sort.
    let n = shape.size();
    let mut out = Vec::new();
    let mut fill = vec![0usize; shape.len()];
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); shape.len()];
    fn rec(
        v: usize,
        n: usize,
        shape: &Partition,
        fill: &mut [usize],
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<YoungTableau>,
    ) {
        if v > n {
            out.push(YoungTableau::from_rows(rows.clone()).expect("valid shape"));
            return;
        }
        for r in 0..fill.len() {
            let ok = fill[r] < shape.part(r) && (r == 0 || fill[r - 1] > fill[r]);
            if ok {
                fill[r] += 1;
                rows[r].push(v);
                rec(v + 1, n, shape, fill, rows, out);
                rows[r].pop();
                fill[r] -= 1;
            }
        }
    }
    rec(1, n, shape, &mut fill, &mut rows, &mut out);
    out.sort_by(|a, b| a.entries.cmp(&b.entries));
    out
}

/// Number of standard tableaux of shape `shape` whose major index is
/// congruent to `i` modulo `m = |shape|`.
pub fn kw_multiplicity(shape: &Partition, i: usize) -> Result<u128, CombinatoricsError> {
    let m = shape.size();
    if m < 2 || i.gcd(&m) != 1 {
        return Err(CombinatoricsError::NotCoprime { i, m });
    }
    Ok(maj_residue_counts(shape)[i % m])
}

/// Counts of standard tableaux of the given shape by major index mod |shape|,
/// computed by a dynamic program over partial fillings, without listing tableaux.
pub fn maj_residue_counts(shape: &Partition) -> Vec<u128> {
    use std::collections::HashMap;
    let m = shape.size();
    let modulus = m.max(1);
    // State: a sub-shape filled with 1..=s and the row holding s. Descent at
    // s - 1 happens when s lies in a lower row than s - 1.
    type Key = (Vec<usize>, usize);
    let mut layer: HashMap<Key, Vec<u128>> = HashMap::new();
    if m == 0 {
        let mut v = vec![0; modulus];
        v[0] = 1;
        return v;
    }
    let mut start = vec![0usize; shape.len()];
    start[0] = 1;
    let mut init = vec![0u128; modulus];
    init[0] = 1;
    layer.insert((start, 0), init);
    for s in 1..m {
        let mut next: HashMap<Key, Vec<u128>> = HashMap::new();
        for ((fill, last_row), counts) in layer {
            for r in 0..fill.len() {
                if fill[r] < shape.part(r) && (r == 0 || fill[r - 1] > fill[r]) {
                    let mut f = fill.clone();
                    f[r] += 1;
                    let shift = if r > last_row { s % modulus } else { 0 };
                    let entry = next.entry((f, r)).or_insert_with(|| vec![0; modulus]);
                    for (res, &c) in counts.iter().enumerate() {
                        entry[(res + shift) % modulus] += c;
                    }
                }
            }
        }
        layer = next;
    }
    let mut total = vec![0u128; modulus];
    for counts in layer.into_values() {
        for (res, c) in counts.into_iter().enumerate() {
            total[res] += c;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;
    use itertools::Itertools;

    /// Brute-force oracle: try every permutation of 1..=n as a row-major filling.
    fn exhaustive_syt(shape: &Partition) -> Vec<YoungTableau> {
        let n = shape.size();
        (1..=n)
            .permutations(n)
            .map(|p| YoungTableau::new(shape.clone(), p).unwrap())
            .filter(YoungTableau::is_standard)
            .collect()
    }

    #[test]
    fn syt_matches_exhaustive() {
        for l in [
            partition![2, 1],
            partition![2, 2, 1],
            partition![3, 1, 1],
            partition![3, 2],
        ] {
            let fast = syt_enumerate(&l);
            let slow = exhaustive_syt(&l);
            assert_eq!(fast, slow);
        }
        assert_eq!(syt_enumerate(&partition![2, 1]).len(), 2);
        assert_eq!(syt_enumerate(&partition![2, 2, 1]).len(), 5);
        assert_eq!(syt_enumerate(&partition![5]).len(), 1);
    }

    #[test]
    fn hook_formula_matches_count() {
        for m in 0..=8 {
            for l in Partition::all(m) {
                assert_eq!(l.hook_length_dimension(), syt_enumerate(&l).len() as u128, "{l}");
            }
        }
    }

    #[test]
    fn major_index_examples() {
        for k in 4..9 {
            let mut top = vec![1, 2];
            top.extend(4..=k);
            let t = YoungTableau::from_rows(vec![top, vec![3, k + 1]]).unwrap();
            assert_eq!(t.major_index().unwrap(), 2 + k);
        }
        let row = YoungTableau::from_rows(vec![(1..=5).collect()]).unwrap();
        assert_eq!(row.major_index().unwrap(), 0);
        let col = YoungTableau::from_rows((1..=5).map(|i| vec![i]).collect()).unwrap();
        assert_eq!(col.major_index().unwrap(), 10);
        let bad = YoungTableau::from_rows(vec![vec![2, 1]]).unwrap();
        assert!(bad.major_index().is_err());
    }

    #[test]
    fn kw_examples() {
        assert_eq!(kw_multiplicity(&partition![2, 1], 1).unwrap(), 1);
        assert_eq!(kw_multiplicity(&partition![3], 1).unwrap(), 0);
        assert_eq!(kw_multiplicity(&partition![4, 1], 1).unwrap(), 1);
        assert!(kw_multiplicity(&partition![2, 2], 2).is_err());
    }

    #[test]
    fn residue_counts_match_listing() {
        for m in 1..=7 {
            for l in Partition::all(m) {
                let mut direct = vec![0u128; m];
                for t in syt_enumerate(&l) {
                    direct[t.major_index().unwrap() % m] += 1;
                }
                assert_eq!(maj_residue_counts(&l), direct, "{l}");
            }
        }
    }

    #[test]
    fn tableau_json_is_row_list() {
        let t = YoungTableau::from_rows(vec![vec![1, 3], vec![2]]).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, "[[1,3],[2]]");
        let back: YoungTableau = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
