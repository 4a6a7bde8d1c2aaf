//! Library results against independent computations: a brute-force
//! presentation of the Filippov component, closed-form characters and
//! classical Specht module facts.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use lanke_core::characters::{factorial, irreducible_character, ClassFunction, Decomposition};
use lanke_core::combinatorics::Partition;
use lanke_core::filippov::{enumerate_shapes, hat_rho_check, rho_character, rho_summary, BracketShape, BracketWord};
use lanke_core::linalg::{ArithmeticMode, Field, SparseVec, Subspace, F998244353};
use lanke_core::module::{character, Representation};
use lanke_core::specht::{hat_specht_check, specht_first, specht_new};
use lanke_core::tree_specht::{prune, prune_and_bridge, tree_specht_decompose, Kind, TPartition};

const MM: ArithmeticMode = ArithmeticMode::Multimodular;

type Relation = Vec<(BracketWord, i64)>;

/// Every canonical multilinear word of arity n with k brackets.
fn all_words(n: usize, k: usize) -> Vec<BracketWord> {
    let m = k * (n - 1) + 1;
    let mut seen = std::collections::BTreeSet::new();
    for shape in enumerate_shapes(n, k) {
        let base = shape.fill();
        for p in (0..m as u32).permutations(m) {
            if let Some((w, _)) = base.relabel(&|x| p[x as usize]).canonical() {
                seen.insert(w);
            }
        }
    }
    seen.into_iter().collect()
}

/// All ways of rewriting one subterm of `w` by `f`, which maps a bracket
/// to the signed words replacing it in each relation it yields.
fn relations_at(w: &BracketWord, f: &dyn Fn(&[BracketWord]) -> Vec<Relation>) -> Vec<Relation> {
    let BracketWord::Bracket(c) = w else {
        return vec![];
    };
    let mut out = f(c);
    for i in 0..c.len() {
        for rel in relations_at(&c[i], f) {
            out.push(
                rel.into_iter()
                    .map(|(sub, s)| {
                        let mut d = c.clone();
                        d[i] = sub;
                        (BracketWord::Bracket(d), s)
                    })
                    .collect(),
            );
        }
    }
    out
}

/// [[x_1..x_n], y_2..y_n] = Σ_i [x_1..[x_i, y_2..y_n]..x_n], for every
/// bracketed argument moved to the front.
fn jacobi(c: &[BracketWord]) -> Vec<Relation> {
    let mut out = Vec::new();
    for q in 0..c.len() {
        let BracketWord::Bracket(xs) = &c[q] else { continue };
        let ys: Vec<BracketWord> = c
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != q)
            .map(|(_, w)| w.clone())
            .collect();
        let mut lhs = vec![c[q].clone()];
        lhs.extend(ys.iter().cloned());
        let mut rel = vec![(BracketWord::Bracket(lhs), 1)];
        for i in 0..xs.len() {
            let mut inner = vec![xs[i].clone()];
            inner.extend(ys.iter().cloned());
            let mut args = xs.clone();
            args[i] = BracketWord::Bracket(inner);
            rel.push((BracketWord::Bracket(args), -1));
        }
        out.push(rel);
    }
    out
}

fn brute_force_dimension(n: usize, k: usize) -> usize {
    let words = all_words(n, k);
    let index: HashMap<&BracketWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut space = Subspace::<F998244353>::new(words.len());
    let rels = words.iter().flat_map(|w| relations_at(w, &jacobi)).map(|rel| {
        SparseVec::from_pairs(
            rel.into_iter()
                .filter_map(|(w, s)| {
                    let (c, t) = w.canonical()?;
                    Some((index[&c], F998244353::from_i64(s * t as i64)))
                })
                .collect(),
        )
    });
    space.extend(rels).unwrap();
    words.len() - space.rank()
}

#[test]
fn dimensions_match_brute_force_presentation() {
    for (n, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)] {
        let want = brute_force_dimension(n, k);
        let got = rho_summary(n, k, MM, 13).unwrap().dim;
        assert_eq!(got, want, "(n, k) = ({n}, {k})");
    }
}

/// Character of the Lie representation: nonzero only on classes d^{m/d},
/// where it is μ(d) (m/d)! d^{m/d} / m.
fn lie_character(m: usize) -> ClassFunction {
    fn mobius(mut d: usize) -> i64 {
        let mut out = 1;
        let mut p = 2;
        while p * p <= d {
            if d.is_multiple_of(p) {
                d /= p;
                if d.is_multiple_of(p) {
                    return 0;
                }
                out = -out;
            }
            p += 1;
        }
        if d > 1 {
            out = -out;
        }
        out
    }
    ClassFunction::from_fn(m, |mu| {
        let d = mu.parts()[0];
        if mu.parts().iter().any(|&p| p != d) {
            return <BigRational as Zero>::zero();
        }
        let r = m / d;
        let v = BigInt::from(mobius(d)) * factorial(r) * BigInt::from(d).pow(r as u32);
        BigRational::new(v, BigInt::from(m))
    })
}

#[test]
fn binary_case_is_the_lie_representation() {
    for k in 1..=5 {
        let (_, ch) = rho_character(2, k, MM, 13).unwrap();
        assert_eq!(ch, lie_character(k + 1), "k = {k}");
    }
}

#[test]
fn specht_characters_are_irreducible() {
    for m in 1..=5 {
        for l in Partition::all(m) {
            let first = specht_first::<BigRational>(&l).unwrap();
            let new = specht_new::<F998244353>(&l).unwrap();
            assert_eq!(character::<BigRational, _>(&first), irreducible_character(&l), "{l}");
            assert_eq!(character::<F998244353, _>(&new), irreducible_character(&l), "{l}");
        }
    }
}

#[test]
fn hat_modules() {
    for (l, k) in [
        ("2,2,1", 2),
        ("3,1", 3),
        ("3,3,1", 3),
        ("2,1,1", 2),
        ("2,2", 3),
        ("3,2,1", 3),
    ] {
        let c = hat_specht_check(&l.parse().unwrap(), k, MM).unwrap();
        assert!(c.passed(), "{c:?}");
    }
    for (n, k) in [(2, 3), (3, 2), (3, 3), (4, 2)] {
        let c = hat_rho_check(n, k, MM, 13).unwrap();
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn paths_give_conjugate_shapes() {
    // a path valued a_1 <= .. <= a_r from the root is the Specht module
    // whose columns, left to right, have lengths a_r, .., a_1
    for s in ["(1 (1 (2)))", "(2 (2))", "(1 (3))", "(1 (2 (2)))", "(2 (3))"] {
        let t: TPartition = s.parse().unwrap();
        let mut cols = t.values().to_vec();
        cols.reverse();
        let lambda = Partition::new(cols).unwrap().conjugate();
        let want = Decomposition::from_pairs(t.size(), [(lambda, 1)]);
        for kind in [Kind::First, Kind::Second] {
            let (_, d) = tree_specht_decompose(&t, kind, MM).unwrap();
            assert_eq!(d, want, "{s}");
        }
    }
}

fn bridge_shapes(n: usize, k: usize) -> Vec<BracketShape> {
    enumerate_shapes(n, k)
        .into_iter()
        .filter(|s| prune(s).is_ok())
        .collect()
}

#[test]
fn shape_layers_sit_below_tree_specht_modules() {
    let mut seen = BTreeMap::new();
    for (n, k) in [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4)] {
        let shapes = bridge_shapes(n, k);
        assert!(!shapes.is_empty());
        for s in shapes {
            let c = prune_and_bridge(&s, MM).unwrap();
            assert!(c.passed(), "{c:?}");
            seen.insert(c.shape.clone(), c.quotient.to_string());
        }
    }
    // the comb layer is the shape k^{n-1}1
    assert_eq!(seen[&BracketShape::comb(3, 3).to_string()], "3^21");
    assert_eq!(seen[&BracketShape::comb(2, 4).to_string()], "41");
}

#[test]
fn catalan_dimensions_from_hook_lengths() {
    for n in 2..=5usize {
        let lambda = Partition::new([vec![2; n - 1], vec![1]].concat()).unwrap();
        let d = rho_summary(n, 2, MM, 13).unwrap().dim;
        assert_eq!(d as u128, lambda.hook_length_dimension());
        assert_eq!(
            BigInt::from(d) * BigInt::from(n + 1),
            factorial(2 * n) / (factorial(n) * factorial(n))
        );
    }
}

#[test]
fn module_dimension_matches_trace_of_identity() {
    let m = specht_first::<F998244353>(&"3,2".parse().unwrap()).unwrap();
    let id = lanke_core::perm::Perm::identity(5);
    assert_eq!(m.trace(&id).lift(), BigRational::from_integer(BigInt::from(m.dim())));
}
