//! Exact sparse linear algebra over Q and prime fields.

mod field;
mod sparse;
mod subspace;

use std::collections::HashMap;
use std::hash::Hash;

use num_rational::BigRational;

pub use field::{lift_integer, Field, Fp, F1000000007, F2147483647, F998244353};
pub use sparse::{SparseMatrix, SparseVec};
pub use subspace::{
    apply_linear, echelonize, induced_action_on_quotient, kernel_basis, quotient_dimension, rank, Scratch, Subspace,
};

use crate::error::LinalgError;

/// Arithmetic used for module constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithmeticMode {
    /// Exact rationals throughout.
    Rational,
    /// Two independent large primes; results must agree and are lifted to integers.
    Multimodular,
}

impl std::fmt::Display for ArithmeticMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ArithmeticMode::Rational => write!(f, "rational"),
            ArithmeticMode::Multimodular => write!(f, "multimodular"),
        }
    }
}

impl std::str::FromStr for ArithmeticMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" => Ok(ArithmeticMode::Rational),
            "multimodular" => Ok(ArithmeticMode::Multimodular),
            other => Err(format!("unknown arithmetic mode {other:?}")),
        }
    }
}

fn reduce_matrix<F: Field>(m: &SparseMatrix<BigRational>) -> Option<SparseMatrix<F>> {
    let mut rows = Vec::with_capacity(m.nrows());
    for r in m.rows() {
        let mut pairs = Vec::with_capacity(r.nnz());
        for (i, x) in r.iter() {
            pairs.push((*i, F::from_rational(x)?));
        }
        rows.push(SparseVec::from_pairs(pairs));
    }
    Some(SparseMatrix::from_rows(rows, m.ncols()))
}

/// Rank of a rational matrix computed modulo two primes. The ranks must
/// agree; a prime dividing some denominator is reported as a disagreement.
pub fn multimodular_rank(m: &SparseMatrix<BigRational>) -> Result<usize, LinalgError> {
    let (a, b) = rayon::join(
        || reduce_matrix::<F2147483647>(m).map(|x| rank(&x)),
        || reduce_matrix::<F998244353>(m).map(|x| rank(&x)),
    );
    agree(a, b, "rank")
}

/// Combines two modular results that must coincide.
pub fn agree<T: PartialEq + std::fmt::Debug>(a: Option<T>, b: Option<T>, what: &str) -> Result<T, LinalgError> {
    match (a, b) {
        (Some(x), Some(y)) if x == y => Ok(x),
        (x, y) => Err(LinalgError::ModularDisagreement(format!("{what}: {x:?} vs {y:?}"))),
    }
}

/// Assigns dense indices to distinct symbols, in order of first appearance.
#[derive(Clone, Debug)]
pub struct Interner<K> {
    symbols: Vec<K>,
    index: HashMap<K, usize>,
}

impl<K: Hash + Eq + Clone> Default for Interner<K> {
    fn default() -> Self {
        Interner {
            symbols: Vec::new(),
            index: HashMap::new(),
        }
    }
}

impl<K: Hash + Eq + Clone> Interner<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, k: K) -> usize {
        if let Some(&i) = self.index.get(&k) {
            return i;
        }
        let i = self.symbols.len();
        self.symbols.push(k.clone());
        self.index.insert(k, i);
        i
    }

    pub fn get(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn symbol(&self, i: usize) -> &K {
        &self.symbols[i]
    }

    pub fn symbols(&self) -> &[K] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interner_is_stable() {
        let mut i = Interner::new();
        assert_eq!(i.intern("a"), 0);
        assert_eq!(i.intern("b"), 1);
        assert_eq!(i.intern("a"), 0);
        assert_eq!(i.symbol(1), &"b");
        assert_eq!(i.len(), 2);
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("rational".parse::<ArithmeticMode>().unwrap(), ArithmeticMode::Rational);
        assert!("float".parse::<ArithmeticMode>().is_err());
        assert_eq!(ArithmeticMode::Multimodular.to_string(), "multimodular");
    }
}
