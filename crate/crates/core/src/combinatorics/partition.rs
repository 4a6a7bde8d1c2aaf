use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::CombinatoricsError;

/// An integer partition, stored as its weakly decreasing list of positive parts.
///
/// The empty partition is the unique partition of 0.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zero parts.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, CombinatoricsError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(CombinatoricsError::NotAPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(m)`.
    pub fn row(m: usize) -> Self {
        Self::from_unsorted(vec![m])
    }

    /// The one-column partition `(1^m)`.
    pub fn column(m: usize) -> Self {
        Partition { parts: vec![1; m] }
    }

    /// `(a^e)`: `e` parts equal to `a`.
    pub fn rectangle(a: usize, e: usize) -> Self {
        Self::from_unsorted(vec![a; e])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of columns of the Young diagram.
    pub fn num_columns(&self) -> usize {
        self.part(0)
    }

    /// Length of the first column (equals the number of rows).
    pub fn first_column_len(&self) -> usize {
        self.len()
    }

    /// Length of the last column; zero for the empty partition.
    pub fn last_column_len(&self) -> usize {
        let c = self.num_columns();
        self.parts.iter().take_while(|&&p| p == c).count()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.num_columns();
        let parts = (0..cols)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Column lengths, left to right.
    pub fn column_lengths(&self) -> Vec<usize> {
        self.conjugate().parts
    }

    /// Sum of the contents `col - row` over all cells.
    pub fn content_sum(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(r, &len)| {
                let r = r as i64;
                let len = len as i64;
                // sum_{s=0}^{len-1} (s - r)
                len * (len - 1) / 2 - r * len
            })
            .sum()
    }

    /// Cells as (row, column), both 0-based, row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
    }

    /// Whether the Young diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| self.parts[i] >= other.parts[i])
    }

    /// Hook length of the cell in row `r`, column `c`.
    pub fn hook(&self, r: usize, c: usize) -> usize {
        let arm = self.parts[r] - c - 1;
        let leg = self.parts[r + 1..].iter().take_while(|&&p| p > c).count();
        arm + leg + 1
    }

    /// Number of standard Young tableaux of this shape, by the hook length formula.
    pub fn hook_length_dimension(&self) -> u128 {
        // n! fits in u128 up to n = 34, far beyond any degree we construct.
        let n = self.size();
        let mut num: u128 = 1;
        for i in 2..=n as u128 {
            num *= i;
        }
        let den: u128 = self.cells().map(|(r, c)| self.hook(r, c) as u128).product();
        num / den
    }

    /// `self` with its first row removed.
    pub fn without_first_row(&self) -> Partition {
        Partition {
            parts: self.parts.iter().skip(1).copied().collect(),
        }
    }

    /// `self` with a new top row of length `k` (requires `k >= self.part(0)`).
    pub fn with_top_row(&self, k: usize) -> Result<Partition, CombinatoricsError> {
        let mut parts = Vec::with_capacity(self.len() + 1);
        parts.push(k);
        parts.extend_from_slice(&self.parts);
        Partition::new(parts)
    }

    /// Whether the last column of `self` is at least as long as the first column of `other`.
    pub fn is_compatible(&self, other: &Partition) -> bool {
        self.last_column_len() >= other.first_column_len()
    }

    /// Side-by-side concatenation: componentwise sum of compatible partitions.
    pub fn concat(&self, other: &Partition) -> Result<Partition, CombinatoricsError> {
        if !self.is_compatible(other) {
            return Err(CombinatoricsError::Incompatible {
                left: self.clone(),
                right: other.clone(),
            });
        }
        Ok(self.add_componentwise(other))
    }

    /// Componentwise sum of parts, with no compatibility requirement.
    pub fn add_componentwise(&self, other: &Partition) -> Partition {
        let len = self.len().max(other.len());
        Partition {
            parts: (0..len).map(|i| self.part(i) + other.part(i)).collect(),
        }
    }

    /// All partitions of `m`, in lexicographically decreasing order.
    pub fn all(m: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        rec(m, m, &mut cur, &mut out);
        out
    }

    /// Compact exponent notation, e.g. `3^2,1` for (3,3,1).
    pub fn to_exponent_string(&self) -> String {
        if self.is_empty() {
            return String::new();
        }
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match groups.last_mut() {
                Some((v, e)) if *v == p => *e += 1,
                _ => groups.push((p, 1)),
            }
        }
        groups
            .iter()
            .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Partition {
    type Err = CombinatoricsError;

    /// Accepts comma-separated parts with optional exponent sugar: `3^2,1`,
    /// `(3,3,1)`, `1^4`. The empty string and `()` give the empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CombinatoricsError::Parse(s.to_string());
        let body = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if body.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in body.split(',') {
            let tok = tok.trim();
            let (v, e) = match tok.split_once('^') {
                Some((v, e)) => (v.trim(), e.trim().parse::<usize>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let v = v.parse::<usize>().map_err(|_| bad())?;
            parts.extend(std::iter::repeat_n(v, e));
        }
        Partition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = CombinatoricsError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Shorthand for building partitions in code and tests.
#[macro_export]
macro_rules! partition {
    () => { $crate::combinatorics::Partition::empty() };
    ($($p:expr),+ $(,)?) => {
        $crate::combinatorics::Partition::new(vec![$($p),+]).expect("valid partition")
    };
}

/// A skew shape `outer / inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, CombinatoricsError> {
        if !outer.contains(&inner) {
            return Err(CombinatoricsError::NotContained { outer, inner });
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    /// Cells of the skew diagram, row-major.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        (0..self.outer.len())
            .flat_map(|r| (self.inner.part(r)..self.outer.part(r)).map(move |c| (r, c)))
            .collect()
    }

    /// The skew cells translated so the leftmost occupied column becomes column 0,
    /// grouped by row. Used to compare skew shapes up to horizontal translation.
    pub fn normalized_rows(&self) -> Vec<(usize, usize)> {
        let offset = (0..self.outer.len())
            .filter(|&r| self.outer.part(r) > self.inner.part(r))
            .map(|r| self.inner.part(r))
            .min()
            .unwrap_or(0);
        (0..self.outer.len())
            .filter(|&r| self.outer.part(r) > self.inner.part(r))
            .map(|r| (self.inner.part(r) - offset, self.outer.part(r) - offset))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_examples() {
        assert_eq!(partition![3, 1].conjugate(), partition![2, 1, 1]);
        assert_eq!(partition![1].conjugate(), partition![1]);
        // cell-by-cell transpose oracle
        let l = partition![2, 2, 1];
        let cells: Vec<(usize, usize)> = l.cells().map(|(r, c)| (c, r)).collect();
        let mut rows = vec![0usize; 3];
        for (r, _) in cells {
            rows[r] += 1;
        }
        rows.retain(|&x| x > 0);
        assert_eq!(l.conjugate(), Partition::new(rows).unwrap());
        assert_eq!(l.conjugate(), partition![3, 2]);
    }

    #[test]
    fn content_sums() {
        assert_eq!(partition![2].content_sum(), 1);
        assert_eq!(partition![1, 1].content_sum(), -1);
        assert_eq!(partition![3, 1].content_sum(), 2);
        assert_eq!(Partition::empty().content_sum(), 0);
    }

    #[test]
    fn compatibility_and_concat() {
        let l1 = partition![3, 3, 3, 2, 2, 1];
        assert!(l1.is_compatible(&partition![3, 2]));
        assert!(!l1.is_compatible(&partition![3, 2, 2, 2]));
        assert!(partition![1].is_compatible(&partition![1]));
        assert_eq!(l1.concat(&partition![3, 2]).unwrap(), partition![6, 5, 3, 2, 2, 1]);
        assert_eq!(
            partition![2, 1, 1].add_componentwise(&partition![1, 1]),
            partition![3, 2, 1]
        );
        assert!(partition![2, 1, 1].concat(&partition![1, 1]).is_err());
        assert_eq!(partition![2, 2, 1].concat(&partition![1]).unwrap(), partition![3, 2, 1]);
        assert_eq!(partition![4].concat(&Partition::empty()).unwrap(), partition![4]);
        assert!(l1.concat(&partition![3, 2, 2, 2]).is_err());
    }

    #[test]
    fn hook_dimensions() {
        assert_eq!(partition![2, 2, 1].hook_length_dimension(), 5);
        assert_eq!(partition![3, 3, 1, 1, 1].hook_length_dimension(), 120);
        assert_eq!(partition![3, 2, 2, 2].hook_length_dimension(), 84);
        assert_eq!(partition![3, 3, 2, 1].hook_length_dimension(), 168);
        // hooks 7,4,1 / 5,2 / 4,1 / 2 / 1
        assert_eq!(partition![3, 2, 2, 1, 1].hook_length_dimension(), 162);
        assert_eq!(partition![3, 2, 1, 1, 1, 1].hook_length_dimension(), 105);
        assert_eq!(Partition::column(7).hook_length_dimension(), 1);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("3^2,1".parse::<Partition>().unwrap(), partition![3, 3, 1]);
        assert_eq!("(2,1,1)".parse::<Partition>().unwrap(), partition![2, 1, 1]);
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(partition![3, 3, 1, 1, 1].to_exponent_string(), "3^2,1^3");
        assert!("2,3".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|m| Partition::all(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        let all = Partition::all(6);
        assert!(all.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn concat_skew_is_right_factor() {
        let l1 = partition![3, 3, 3, 2, 2, 1];
        let l2 = partition![3, 2];
        let skew = SkewShape::new(l1.concat(&l2).unwrap(), l1).unwrap();
        let rows = skew.normalized_rows();
        let expected: Vec<(usize, usize)> = l2.parts().iter().map(|&p| (0, p)).collect();
        assert_eq!(rows, expected);
    }
}
