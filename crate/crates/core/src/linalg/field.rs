use std::fmt::{self, Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact scalar field used by the sparse elimination routines.
pub trait Field: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    /// Image of a rational; `None` if the denominator is not invertible.
    fn from_rational(q: &BigRational) -> Option<Self>;
    /// A rational representative: the value itself over Q, and the
    /// symmetric lift to (-p/2, p/2] over F_p.
    fn lift(&self) -> BigRational;
    /// Short description of the field, e.g. `Q` or `F_998244353`.
    fn name() -> String;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self += a * b`.
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
    fn lift(&self) -> BigRational {
        self.clone()
    }
    fn name() -> String {
        "Q".to_string()
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// The prime field F_P, for a prime `P < 2^63`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

/// 2^31 - 1.
pub type F2147483647 = Fp<2_147_483_647>;
pub type F1000000007 = Fp<1_000_000_007>;
pub type F998244353 = Fp<998_244_353>;

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u128;
        let mut acc: u128 = 1;
        let p = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u64)
    }

    fn from_bigint(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("reduced below P"))
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        let s = self.0 + other.0;
        Fp(if s >= P { s - P } else { s })
    }
    fn sub(&self, other: &Self) -> Self {
        Fp(if self.0 >= other.0 {
            self.0 - other.0
        } else {
            self.0 + P - other.0
        })
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u128 * other.0 as u128) % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(P - 2)
    }
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        let d = Self::from_bigint(q.denom());
        if d.0 == 0 {
            return None;
        }
        Some(Self::from_bigint(q.numer()).mul(&d.inv()))
    }
    fn lift(&self) -> BigRational {
        let v = if self.0 > P / 2 {
            BigInt::from(self.0) - BigInt::from(P)
        } else {
            BigInt::from(self.0)
        };
        BigRational::from_integer(v)
    }
    fn name() -> String {
        format!("F_{P}")
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let s = (self.0 as u128 + a.0 as u128 * b.0 as u128) % P as u128;
        self.0 = s as u64;
    }
}

/// Lifts a field element to an integer, if its rational lift is one and
/// its absolute value is at most `bound`.
pub fn lift_integer<F: Field>(x: &F, bound: &BigInt) -> Option<BigInt> {
    let q = x.lift();
    if q.is_integer() && q.numer().abs() <= *bound {
        Some(q.to_integer())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        type F = Fp<7>;
        let a = F::from_i64(3);
        assert_eq!(a.mul(&a.inv()), F::one());
        assert_eq!(F::from_i64(-1), F::new(6));
        assert_eq!(F::from_i64(-1).lift(), BigRational::from_integer((-1).into()));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(F::from_rational(&half).unwrap().mul(&F::from_i64(2)), F::one());
        let seventh = BigRational::new(1.into(), 7.into());
        assert!(F::from_rational(&seventh).is_none());
    }

    #[test]
    fn large_prime_inverse() {
        for v in [2i64, 3, 12345, -99] {
            let x = F2147483647::from_i64(v);
            assert!(x.mul(&x.inv()).is_one());
            let y = F998244353::from_i64(v);
            assert!(y.mul(&y.inv()).is_one());
        }
    }
}
