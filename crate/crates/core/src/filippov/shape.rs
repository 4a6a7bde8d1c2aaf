//! Plane n-ary bracketing shapes.

use std::fmt;
use std::str::FromStr;

use crate::error::WordError;
use crate::filippov::word::BracketWord;

/// A plane tree in which every internal node has the same arity; a leaf has
/// no children.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BracketShape {
    children: Vec<BracketShape>,
}

impl BracketShape {
    pub fn leaf() -> Self {
        BracketShape { children: vec![] }
    }

    pub fn node(children: Vec<BracketShape>) -> Self {
        BracketShape { children }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn children(&self) -> &[BracketShape] {
        &self.children
    }

    /// The comb with `k` brackets: the first argument of each bracket holds
    /// the next one.
    pub fn comb(n: usize, k: usize) -> Self {
        let mut s = BracketShape::leaf();
        for _ in 0..k {
            let mut c = vec![s];
            c.extend((1..n).map(|_| BracketShape::leaf()));
            s = BracketShape::node(c);
        }
        s
    }

    pub fn num_brackets(&self) -> usize {
        if self.is_leaf() {
            0
        } else {
            1 + self.children.iter().map(|c| c.num_brackets()).sum::<usize>()
        }
    }

    pub fn num_leaves(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(|c| c.num_leaves()).sum()
        }
    }

    /// Number of leaves at each depth 1, 2, ... (the root has depth 0).
    pub fn depth_vector(&self) -> Vec<usize> {
        let mut v = Vec::new();
        self.count_depths(0, &mut v);
        v.remove(0);
        v
    }

    fn count_depths(&self, d: usize, v: &mut Vec<usize>) {
        if v.len() <= d {
            v.resize(d + 1, 0);
        }
        if self.is_leaf() {
            v[d] += 1;
        } else {
            self.children.iter().for_each(|c| c.count_depths(d + 1, v));
        }
    }

    /// Number of leaf children of the root.
    pub fn leaf_children(&self) -> usize {
        self.children.iter().filter(|c| c.is_leaf()).count()
    }

    /// True if along every edge between brackets the number of leaf children
    /// weakly increases away from the root.
    pub fn is_increasing(&self) -> bool {
        let mu = self.leaf_children();
        self.children
            .iter()
            .filter(|c| !c.is_leaf())
            .all(|c| mu <= c.leaf_children() && c.is_increasing())
    }

    /// True if every bracket has at most one bracketed child, i.e. the shape
    /// is a comb up to reordering arguments.
    pub fn is_comb_like(&self) -> bool {
        self.children.iter().filter(|c| !c.is_leaf()).count() <= 1 && self.children.iter().all(|c| c.is_comb_like())
    }

    /// The word of this shape with leaves labeled 0, 1, ... in preorder.
    pub fn fill(&self) -> BracketWord {
        let mut next = 0;
        self.fill_from(&mut next)
    }

    fn fill_from(&self, next: &mut u32) -> BracketWord {
        if self.is_leaf() {
            *next += 1;
            BracketWord::Letter(*next - 1)
        } else {
            BracketWord::Bracket(self.children.iter().map(|c| c.fill_from(next)).collect())
        }
    }

    /// The shape of a word.
    pub fn of_word(w: &BracketWord) -> Self {
        match w {
            BracketWord::Letter(_) => BracketShape::leaf(),
            BracketWord::Bracket(c) => BracketShape::node(c.iter().map(Self::of_word).collect()),
        }
    }
}

/// All plane n-ary shapes with `k` brackets; there are
/// binom(nk, k) / ((n-1)k + 1) of them.
pub fn enumerate_shapes(n: usize, k: usize) -> Vec<BracketShape> {
    let mut table: Vec<Vec<BracketShape>> = vec![vec![BracketShape::leaf()]];
    for size in 1..=k {
        let mut out = Vec::new();
        // distribute size - 1 brackets among n children
        let mut stack: Vec<(Vec<BracketShape>, usize)> = vec![(vec![], size - 1)];
        while let Some((prefix, left)) = stack.pop() {
            if prefix.len() == n {
                if left == 0 {
                    out.push(BracketShape::node(prefix));
                }
                continue;
            }
            for s in 0..=left {
                for t in &table[s] {
                    let mut p = prefix.clone();
                    p.push(t.clone());
                    stack.push((p, left - s));
                }
            }
        }
        out.sort();
        table.push(out);
    }
    table.swap_remove(k)
}

impl fmt::Display for BracketShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_leaf() {
            return write!(f, "*");
        }
        write!(f, "[")?;
        for (i, c) in self.children.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for BracketShape {
    type Err = WordError;

    /// Parses `[[*,*],*]`; letters are also accepted in place of `*`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut t = String::with_capacity(s.len());
        let chars = s.chars().peekable();
        let mut next = 1;
        for c in chars {
            if c == '*' {
                t.push_str(&next.to_string());
                next += 1;
            } else {
                t.push(c);
            }
        }
        let w: BracketWord = t.parse()?;
        Ok(Self::of_word(&w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fuss_catalan_counts() {
        assert_eq!(enumerate_shapes(2, 3).len(), 5);
        assert_eq!(enumerate_shapes(3, 3).len(), 12);
        assert_eq!(enumerate_shapes(4, 2).len(), 4);
        assert_eq!(enumerate_shapes(3, 0), vec![BracketShape::leaf()]);
    }

    #[test]
    fn comb_depths() {
        assert_eq!(BracketShape::comb(3, 3).depth_vector(), vec![2, 2, 3]);
        let s: BracketShape = "[[*,*,*],[*,*,*],*]".parse().unwrap();
        assert_eq!(s.depth_vector(), vec![1, 6]);
        assert!(s.is_increasing());
        assert!(!s.is_comb_like());
        assert_eq!(s.to_string(), "[[*,*,*],[*,*,*],*]");
        assert_eq!(s.fill().to_string(), "[[1,2,3],[4,5,6],7]");
    }

    #[test]
    fn increasing_condition() {
        let s: BracketShape = "[[[*,*],*],[*,*]]".parse().unwrap();
        // root has no leaf children, so it is at most every child
        assert!(s.is_increasing());
        let t: BracketShape = "[[[*,*],[*,*]],*]".parse().unwrap();
        assert!(!t.is_increasing());
    }
}
