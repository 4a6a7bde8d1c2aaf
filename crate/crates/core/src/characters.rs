//! Characters of symmetric groups: Murnaghan–Nakayama, inner products,
//! decomposition into irreducibles, induction products.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::Partition;
use crate::error::CharacterError;
use crate::perm::{sort_with_sign, Perm};

/// Largest degree for which character tables are built unless overridden.
pub const DEFAULT_DEGREE_CAP: usize = 13;

pub fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * i)
}

/// Order of the centralizer of a permutation of cycle type `mu`.
pub fn centralizer_order(mu: &Partition) -> BigInt {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in mu.parts() {
        *counts.entry(p).or_default() += 1;
    }
    counts.iter().fold(BigInt::one(), |acc, (&i, &e)| {
        acc * BigInt::from(i).pow(e as u32) * factorial(e)
    })
}

/// Size of the conjugacy class of cycle type `mu`.
pub fn class_size(mu: &Partition) -> BigInt {
    static CACHE: OnceLock<Mutex<HashMap<Partition, BigInt>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(mu) {
        return v.clone();
    }
    let v = factorial(mu.size()) / centralizer_order(mu);
    cache.lock().unwrap().insert(mu.clone(), v.clone());
    v
}

/// A rational-valued class function on S_m, stored by cycle type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    degree: usize,
    values: BTreeMap<Partition, BigRational>,
}

impl ClassFunction {
    pub fn zero(degree: usize) -> Self {
        ClassFunction {
            degree,
            values: Partition::all(degree)
                .into_iter()
                .map(|mu| (mu, BigRational::zero()))
                .collect(),
        }
    }

    /// Builds a class function by evaluating `f` on every cycle type.
    pub fn from_fn(degree: usize, mut f: impl FnMut(&Partition) -> BigRational) -> Self {
        ClassFunction {
            degree,
            values: Partition::all(degree)
                .into_iter()
                .map(|mu| {
                    let v = f(&mu);
                    (mu, v)
                })
                .collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn value(&self, mu: &Partition) -> &BigRational {
        &self.values[mu]
    }

    pub fn values(&self) -> &BTreeMap<Partition, BigRational> {
        &self.values
    }

    /// Value at the identity.
    pub fn dimension(&self) -> BigRational {
        self.values[&Partition::column(self.degree)].clone()
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction, CharacterError> {
        self.check_degree(other)?;
        Ok(ClassFunction {
            degree: self.degree,
            values: self
                .values
                .iter()
                .map(|(mu, v)| (mu.clone(), v + &other.values[mu]))
                .collect(),
        })
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction, CharacterError> {
        self.check_degree(other)?;
        Ok(ClassFunction {
            degree: self.degree,
            values: self
                .values
                .iter()
                .map(|(mu, v)| (mu.clone(), v - &other.values[mu]))
                .collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> ClassFunction {
        ClassFunction {
            degree: self.degree,
            values: self.values.iter().map(|(mu, v)| (mu.clone(), v * c)).collect(),
        }
    }

    /// Pointwise product (character of the inner tensor product).
    pub fn pointwise(&self, other: &ClassFunction) -> Result<ClassFunction, CharacterError> {
        self.check_degree(other)?;
        Ok(ClassFunction {
            degree: self.degree,
            values: self
                .values
                .iter()
                .map(|(mu, v)| (mu.clone(), v * &other.values[mu]))
                .collect(),
        })
    }

    fn check_degree(&self, other: &ClassFunction) -> Result<(), CharacterError> {
        if self.degree != other.degree {
            return Err(CharacterError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }
}

fn beta_set(lambda: &Partition, len: usize) -> Vec<i64> {
    (0..len).map(|i| lambda.part(i) as i64 + (len - 1 - i) as i64).collect()
}

/// χ^λ(μ) by the Murnaghan–Nakayama rule on beta-sets, memoized.
pub fn character_value(lambda: &Partition, mu: &Partition) -> i64 {
    static CACHE: OnceLock<Mutex<HashMap<(Partition, Partition), i64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    assert_eq!(lambda.size(), mu.size(), "degree mismatch");
    if lambda.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(&v) = cache.lock().unwrap().get(&key) {
        return v;
    }
    // remove a rim hook of length r = largest part of mu
    let r = mu.part(0) as i64;
    let rest = Partition::new(mu.parts()[1..].to_vec()).expect("suffix of a partition");
    let len = lambda.len();
    let beta = beta_set(lambda, len);
    let mut total = 0i64;
    for i in 0..len {
        let b = beta[i] - r;
        if b < 0 || beta.contains(&b) {
            continue;
        }
        // leg length = number of beta entries strictly between b and beta[i]
        let between = beta.iter().filter(|&&x| x > b && x < beta[i]).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut nb = beta.clone();
        nb[i] = b;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = nb
            .iter()
            .enumerate()
            .map(|(j, &x)| (x - (len - 1 - j) as i64) as usize)
            .collect();
        let smaller = Partition::new(parts).expect("hook removal yields a partition");
        total += sign * character_value(&smaller, &rest);
    }
    cache.lock().unwrap().insert(key, total);
    total
}

/// The irreducible character χ^λ.
pub fn irreducible_character(lambda: &Partition) -> ClassFunction {
    ClassFunction::from_fn(lambda.size(), |mu| {
        BigRational::from_integer(character_value(lambda, mu).into())
    })
}

/// (1/m!) Σ_μ |class μ| f(μ) g(μ).
pub fn inner_product(f: &ClassFunction, g: &ClassFunction) -> Result<BigRational, CharacterError> {
    f.check_degree(g)?;
    let mut sum = BigRational::zero();
    for (mu, v) in &f.values {
        sum += BigRational::from_integer(class_size(mu)) * v * &g.values[mu];
    }
    Ok(sum / BigRational::from_integer(factorial(f.degree)))
}

/// A multiset of irreducibles of S_m.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Decomposition {
    degree: usize,
    mults: BTreeMap<Partition, u64>,
}

#[derive(Serialize, Deserialize)]
struct DecompositionEntry {
    lambda: Partition,
    mult: u64,
}

impl Decomposition {
    pub fn new(degree: usize) -> Self {
        Decomposition {
            degree,
            mults: BTreeMap::new(),
        }
    }

    /// From (λ, multiplicity) pairs; zero multiplicities are dropped.
    pub fn from_pairs(degree: usize, pairs: impl IntoIterator<Item = (Partition, u64)>) -> Self {
        let mut d = Decomposition::new(degree);
        for (l, k) in pairs {
            d.add(l, k);
        }
        d
    }

    pub fn add(&mut self, lambda: Partition, k: u64) {
        assert_eq!(lambda.size(), self.degree, "degree mismatch");
        if k > 0 {
            *self.mults.entry(lambda).or_default() += k;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn multiplicity(&self, lambda: &Partition) -> u64 {
        self.mults.get(lambda).copied().unwrap_or(0)
    }

    /// Constituents with positive multiplicity, λ lexicographically decreasing.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, u64)> {
        self.mults.iter().rev().map(|(l, &k)| (l, k))
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn dimension(&self) -> u128 {
        self.mults
            .iter()
            .map(|(l, &k)| k as u128 * l.hook_length_dimension())
            .sum()
    }

    pub fn character(&self) -> ClassFunction {
        let mut f = ClassFunction::zero(self.degree);
        for (l, &k) in &self.mults {
            let c = irreducible_character(l).scale(&BigRational::from_integer(k.into()));
            f = f.add(&c).expect("same degree");
        }
        f
    }

    /// `self - other`, or `None` if some multiplicity would go negative.
    pub fn checked_sub(&self, other: &Decomposition) -> Option<Decomposition> {
        let mut out = self.clone();
        for (l, &k) in &other.mults {
            let cur = out.mults.get(l).copied().unwrap_or(0);
            if cur < k {
                return None;
            }
            if cur == k {
                out.mults.remove(l);
            } else {
                out.mults.insert(l.clone(), cur - k);
            }
        }
        Some(out)
    }

    /// Largest number of columns among the constituents.
    pub fn max_columns(&self) -> usize {
        self.mults.keys().map(Partition::num_columns).max().unwrap_or(0)
    }
}

impl fmt::Display for Decomposition {
    /// `41 + 32 + 2*31^2` style, parts joined without commas when all are < 10.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mults.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms()
            .map(|(l, k)| {
                let s = compact_partition(l);
                if k == 1 {
                    s
                } else {
                    format!("{k}*{s}")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Exponent notation without separators: (4,4,1) ↦ `4^21`.
/// Falls back to comma-separated exponent notation if any part exceeds 9.
pub fn compact_partition(l: &Partition) -> String {
    if l.parts().iter().any(|&p| p > 9) {
        return l.to_exponent_string();
    }
    if l.is_empty() {
        return "()".to_string();
    }
    l.to_exponent_string()
        .split(',')
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join("")
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<DecompositionEntry> = self
            .terms()
            .map(|(l, k)| DecompositionEntry {
                lambda: l.clone(),
                mult: k,
            })
            .collect();
        entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Decomposition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let entries = Vec::<DecompositionEntry>::deserialize(d)?;
        let degree = entries.first().map(|e| e.lambda.size()).unwrap_or(0);
        if entries.iter().any(|e| e.lambda.size() != degree) {
            return Err(serde::de::Error::custom("mixed degrees"));
        }
        Ok(Decomposition::from_pairs(
            degree,
            entries.into_iter().map(|e| (e.lambda, e.mult)),
        ))
    }
}

/// Multiplicities of the irreducibles in `f`; fails unless all are
/// nonnegative integers.
pub fn decompose(f: &ClassFunction) -> Result<Decomposition, CharacterError> {
    let mut d = Decomposition::new(f.degree);
    for lambda in Partition::all(f.degree) {
        let c = inner_product(f, &irreducible_character(&lambda))?;
        if !c.is_integer() || c.is_negative() {
            return Err(CharacterError::NotACharacter {
                lambda,
                value: c.to_string(),
            });
        }
        let k = c.to_integer().to_u64().expect("multiplicity fits in u64");
        d.add(lambda, k);
    }
    Ok(d)
}

/// Fails if `degree` exceeds `cap`.
pub fn check_degree_cap(degree: usize, cap: usize) -> Result<(), CharacterError> {
    if degree > cap {
        return Err(CharacterError::DegreeCap { degree, cap });
    }
    Ok(())
}

/// All ways to split the cycles of `nu` into a cycle type of size `a` and
/// the complementary one, with the count z_ν / (z_α z_β) of such splittings
/// of a fixed permutation.
fn cycle_splittings(nu: &Partition, a: usize) -> Vec<(Partition, Partition, BigInt)> {
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &p in nu.parts() {
        match counts.last_mut() {
            Some((v, e)) if *v == p => *e += 1,
            _ => counts.push((p, 1)),
        }
    }
    let mut out = Vec::new();
    fn rec(
        idx: usize,
        counts: &[(usize, usize)],
        remaining: usize,
        left: &mut Vec<usize>,
        right: &mut Vec<usize>,
        weight: BigInt,
        out: &mut Vec<(Partition, Partition, BigInt)>,
    ) {
        if idx == counts.len() {
            if remaining == 0 {
                out.push((
                    Partition::from_unsorted(left.clone()),
                    Partition::from_unsorted(right.clone()),
                    weight,
                ));
            }
            return;
        }
        let (len, e) = counts[idx];
        for take in 0..=e {
            if take * len > remaining {
                break;
            }
            let l0 = left.len();
            let r0 = right.len();
            left.extend(std::iter::repeat_n(len, take));
            right.extend(std::iter::repeat_n(len, e - take));
            let binom = factorial(e) / (factorial(take) * factorial(e - take));
            rec(
                idx + 1,
                counts,
                remaining - take * len,
                left,
                right,
                &weight * binom,
                out,
            );
            left.truncate(l0);
            right.truncate(r0);
        }
    }
    rec(0, &counts, a, &mut Vec::new(), &mut Vec::new(), BigInt::one(), &mut out);
    out
}

/// Character of the induction product (f ⊗ g)↑ from S_a × S_b to S_{a+b}.
pub fn induction_product_character(f: &ClassFunction, g: &ClassFunction) -> ClassFunction {
    let a = f.degree;
    let b = g.degree;
    ClassFunction::from_fn(a + b, |nu| {
        // Ind(χ)(ν) = Σ_{α∪β=ν} z_ν/(z_α z_β) f(α) g(β); the binomial weights
        // from cycle_splittings equal that ratio.
        let mut v = BigRational::zero();
        for (alpha, beta, w) in cycle_splittings(nu, a) {
            v += BigRational::from_integer(w) * f.value(&alpha) * g.value(&beta);
        }
        v
    })
}

pub fn trivial_character(m: usize) -> ClassFunction {
    irreducible_character(&Partition::row(m))
}

pub fn sign_character(m: usize) -> ClassFunction {
    irreducible_character(&Partition::column(m))
}

/// Closed form of sgn₂[sgn_n]: one copy of S^{2^{n-i} 1^{2i}} for every odd i ≤ n.
pub fn sgn2_plethysm_sgn(n: usize) -> Decomposition {
    let mut d = Decomposition::new(2 * n);
    for i in (1..=n).step_by(2) {
        let mut parts = vec![2; n - i];
        parts.extend(std::iter::repeat_n(1, 2 * i));
        d.add(Partition::new(parts).expect("valid"), 1);
    }
    d
}

/// Character of sgn₂[sgn_n] computed directly: the monomial module spanned by
/// unordered pairs {X, Y} of complementary n-subsets of [2n], where a
/// permutation fixing the pair acts by the product of its signs on the two
/// blocks (read in increasing order), times -1 if it swaps them.
pub fn sgn2_plethysm_sgn_brute_force(n: usize) -> ClassFunction {
    let m = 2 * n;
    // basis: n-subsets X containing 0 (Y is the complement)
    let subsets: Vec<Vec<usize>> = (0u32..(1 << m))
        .filter(|s| s.count_ones() as usize == n && s & 1 == 1)
        .map(|s| (0..m).filter(|i| s >> i & 1 == 1).collect())
        .collect();
    ClassFunction::from_fn(m, |mu| {
        let sigma = Perm::from_cycle_type(mu);
        let mut trace = 0i64;
        for x in &subsets {
            let y: Vec<usize> = (0..m).filter(|i| !x.contains(i)).collect();
            let sx: Vec<usize> = x.iter().map(|&i| sigma.apply(i)).collect();
            let sy: Vec<usize> = y.iter().map(|&i| sigma.apply(i)).collect();
            let (sorted_sx, sign_x) = sort_with_sign(&sx);
            let (_, sign_y) = sort_with_sign(&sy);
            if &sorted_sx == x {
                trace += (sign_x * sign_y) as i64;
            } else if sorted_sx == y {
                trace -= (sign_x * sign_y) as i64;
            }
        }
        BigRational::from_integer(trace.into())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn trivial_and_sign() {
        for m in 1..=6 {
            for mu in Partition::all(m) {
                assert_eq!(character_value(&Partition::row(m), &mu), 1);
                let s = if (m - mu.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(character_value(&Partition::column(m), &mu), s);
            }
        }
    }

    /// χ^{(2,1)} from the standard representation: permutation character minus trivial.
    #[test]
    fn standard_rep_of_s3() {
        for mu in Partition::all(3) {
            let fixed = Perm::from_cycle_type(&mu)
                .images()
                .iter()
                .enumerate()
                .filter(|(i, &j)| *i == j)
                .count() as i64;
            assert_eq!(character_value(&partition![2, 1], &mu), fixed - 1);
        }
        assert_eq!(character_value(&partition![2, 1], &partition![3]), -1);
    }

    #[test]
    fn orthonormality() {
        for m in 1..=6 {
            let ps = Partition::all(m);
            for a in &ps {
                for b in &ps {
                    let ip = inner_product(&irreducible_character(a), &irreducible_character(b)).unwrap();
                    assert_eq!(ip, if a == b { r(1) } else { r(0) });
                }
            }
        }
    }

    #[test]
    fn dimension_is_hook_length() {
        for m in 1..=8 {
            for l in Partition::all(m) {
                let d = irreducible_character(&l).dimension();
                assert_eq!(d, BigRational::from_integer(l.hook_length_dimension().into()));
            }
        }
    }

    #[test]
    fn decompose_regular() {
        let reg = ClassFunction::from_fn(3, |mu| if mu == &partition![1, 1, 1] { r(6) } else { r(0) });
        let d = decompose(&reg).unwrap();
        assert_eq!(d.multiplicity(&partition![3]), 1);
        assert_eq!(d.multiplicity(&partition![2, 1]), 2);
        assert_eq!(d.multiplicity(&partition![1, 1, 1]), 1);
        let half = reg.scale(&BigRational::new(1.into(), 2.into()));
        assert!(decompose(&half).is_err());
    }

    #[test]
    fn induction_products() {
        let s1 = sign_character(1);
        let d = decompose(&induction_product_character(&s1, &s1)).unwrap();
        assert_eq!(d.to_string(), "2 + 1^2");
        // Pieri: χ^{21} • sgn₂
        let f = induction_product_character(&irreducible_character(&partition![2, 1]), &sign_character(2));
        let d = decompose(&f).unwrap();
        let expected: Vec<Partition> = crate::combinatorics::pieri_column(&partition![2, 1], 2);
        let got: Vec<Partition> = d.terms().map(|(l, _)| l.clone()).collect();
        assert_eq!(got, expected);
        assert!(d.terms().all(|(_, k)| k == 1));
    }

    #[test]
    fn induction_dimension_is_binomial_product() {
        for a in 1..=4 {
            for b in 1..=3 {
                for la in Partition::all(a) {
                    for lb in Partition::all(b) {
                        let f = induction_product_character(&irreducible_character(&la), &irreducible_character(&lb));
                        let binom = factorial(a + b) / (factorial(a) * factorial(b));
                        let expected =
                            BigInt::from(la.hook_length_dimension()) * BigInt::from(lb.hook_length_dimension()) * binom;
                        assert_eq!(f.dimension(), BigRational::from_integer(expected));
                    }
                }
            }
        }
    }

    #[test]
    fn plethysm_closed_form_matches_brute_force() {
        for n in 1..=3 {
            let closed = sgn2_plethysm_sgn(n);
            let brute = decompose(&sgn2_plethysm_sgn_brute_force(n)).unwrap();
            assert_eq!(closed, brute, "n = {n}");
        }
        assert_eq!(sgn2_plethysm_sgn(2).to_string(), "21^2");
        assert_eq!(sgn2_plethysm_sgn(3).to_string(), "2^21^2 + 1^6");
        assert_eq!(sgn2_plethysm_sgn(1).to_string(), "1^2");
    }

    #[test]
    fn decomposition_json() {
        let d = Decomposition::from_pairs(3, [(partition![2, 1], 2), (partition![3], 1)]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"[{"lambda":[3],"mult":1},{"lambda":[2,1],"mult":2}]"#);
        let back: Decomposition = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}
