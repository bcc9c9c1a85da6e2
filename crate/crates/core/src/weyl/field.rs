//! Coefficient fields and exact binomial coefficients.
//!
//! Every computation is exact: characteristic zero uses arbitrary-precision
//! rationals, positive characteristic uses integers modulo a prime.  Binomial
//! coefficients are computed in arbitrary-precision integers and then mapped
//! into the field; a Lucas-theorem fast path serves the prime-field case and
//! is tested against the exact path.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

/// Errors raised when constructing a coefficient field.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// Positive characteristic must be a prime number.
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
}

/// The coefficient field: the rationals, or the prime field with p elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// Exact rational numbers, characteristic zero.
    Rational,
    /// Integers modulo the given prime.
    Prime(u64),
}

impl FieldSpec {
    /// The prime field `F_p`.  Fails if `p` is not prime.
    pub fn prime(p: u64) -> Result<FieldSpec, FieldError> {
        if is_prime_u64(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    /// Field of the given characteristic: 0 gives the rationals, a prime p
    /// gives `F_p`, anything else is rejected.
    pub fn from_characteristic(c: u64) -> Result<FieldSpec, FieldError> {
        if c == 0 {
            Ok(FieldSpec::Rational)
        } else {
            FieldSpec::prime(c)
        }
    }

    /// 0 for the rationals, p for the prime field.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    /// The additive identity of this field.
    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    /// The multiplicative identity of this field.
    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    /// The image of a machine integer in this field.
    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => {
                let m = v.rem_euclid(*p as i64) as u64;
                Scalar::Fp { p: *p, val: m }
            }
        }
    }

    /// The image of an arbitrary-precision integer in this field.
    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rat(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let m = v.mod_floor(&BigInt::from(*p));
                Scalar::Fp {
                    p: *p,
                    val: m.to_u64().expect("residue fits in u64"),
                }
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// An element of a coefficient field.
///
/// Arithmetic between scalars of different fields is a programming error and
/// panics; public entry points validate field agreement before arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    /// An exact rational number.
    Rat(BigRational),
    /// A residue modulo the prime `p`, stored in `0..p`.
    Fp { p: u64, val: u64 },
}

impl Scalar {
    /// The field this scalar belongs to.
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rational,
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) if p == q => Scalar::Fp {
                p: *p,
                val: add_mod(*a, *b, *p),
            },
            _ => panic!("scalar arithmetic across different fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) if p == q => Scalar::Fp {
                p: *p,
                val: mul_mod(*a, *b, *p),
            },
            _ => panic!("scalar arithmetic across different fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            },
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            // val^(p-2) = val^(-1) by Fermat's little theorem, p prime.
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: pow_mod(*val, p - 2, *p),
            },
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc: u64 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the fixed witness set decides primality for
/// every u64.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &w in &WITNESSES {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The binomial coefficient C(n, k) as an exact integer; zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        // Exact at every step: acc holds C(n, i) after the division.
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    acc
}

/// C(n, k) modulo a prime, by Lucas' theorem on base-p digits.
pub fn binomial_mod_p(n: u64, k: u64, p: u64) -> u64 {
    debug_assert!(is_prime_u64(p), "modulus must be prime");
    let mut n = n;
    let mut k = k;
    let mut acc: u64 = 1;
    while k > 0 || n > 0 {
        let nd = n % p;
        let kd = k % p;
        if kd > nd {
            return 0;
        }
        acc = mul_mod(acc, binomial_small_mod(nd, kd, p), p);
        n /= p;
        k /= p;
    }
    acc
}

/// C(n, k) mod p for digits 0 <= k <= n < p, via modular division.
fn binomial_small_mod(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let mut num: u64 = 1;
    let mut den: u64 = 1;
    for i in 1..=k {
        num = mul_mod(num, (n - k + i) % p, p);
        den = mul_mod(den, i % p, p);
    }
    // den < p! truncated to factors < p, hence coprime to p.
    mul_mod(num, pow_mod(den, p - 2, p), p)
}

/// The binomial coefficient C(n, k) as an element of the given field.
///
/// Prime fields use the Lucas fast path, which agrees with reducing the
/// exact integer value.
pub fn field_binomial(field: FieldSpec, n: u64, k: u64) -> Scalar {
    match field {
        FieldSpec::Rational => field.from_bigint(&binomial(n, k)),
        FieldSpec::Prime(p) => Scalar::Fp {
            p,
            val: binomial_mod_p(n, k, p),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_and_edge_cases() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(is_prime_u64(5));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(0));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(4));
        assert!(!is_prime_u64(561), "Carmichael numbers are composite");
        assert!(!is_prime_u64(1_000_000_008));
    }

    #[test]
    fn field_construction_validates_characteristic() {
        assert_eq!(FieldSpec::from_characteristic(0), Ok(FieldSpec::Rational));
        assert_eq!(FieldSpec::from_characteristic(7), Ok(FieldSpec::Prime(7)));
        assert_eq!(
            FieldSpec::from_characteristic(6),
            Err(FieldError::NotPrime(6))
        );
        assert_eq!(FieldSpec::prime(9), Err(FieldError::NotPrime(9)));
    }

    #[test]
    fn binomial_exact_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(10, 5), BigInt::from(252));
        assert_eq!(binomial(64, 32).to_string(), "1832624140942590534");
    }

    #[test]
    fn lucas_agrees_with_exact_binomial() {
        for p in [2u64, 3, 5, 7] {
            let pb = BigInt::from(p);
            for n in 0..=40u64 {
                for k in 0..=40u64 {
                    let exact = binomial(n, k).mod_floor(&pb).to_u64().unwrap();
                    assert_eq!(
                        binomial_mod_p(n, k, p),
                        exact,
                        "C({n},{k}) mod {p} disagrees"
                    );
                }
            }
        }
    }

    #[test]
    fn field_binomial_matches_characteristic() {
        let q = FieldSpec::Rational;
        assert_eq!(field_binomial(q, 5, 2), q.from_i64(10));
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(field_binomial(f2, 5, 2).is_zero());
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(field_binomial(f5, 5, 2).is_zero());
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(field_binomial(f7, 5, 2), f7.from_i64(3));
    }

    #[test]
    fn rational_scalar_arithmetic() {
        let q = FieldSpec::Rational;
        let half = Scalar::Rat(BigRational::new(BigInt::from(1), BigInt::from(2)));
        let third = Scalar::Rat(BigRational::new(BigInt::from(1), BigInt::from(3)));
        let sum = half.add(&third);
        assert_eq!(
            sum,
            Scalar::Rat(BigRational::new(BigInt::from(5), BigInt::from(6)))
        );
        assert_eq!(half.mul(&q.from_i64(2)), q.one());
        assert_eq!(half.sub(&half), q.zero());
        assert_eq!(
            half.inverse().unwrap(),
            q.from_i64(2),
            "1/2 inverts to 2 exactly"
        );
        assert_eq!(q.zero().inverse(), None);
    }

    #[test]
    fn prime_field_scalar_arithmetic() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.from_i64(5).add(&f7.from_i64(4)), f7.from_i64(2));
        assert_eq!(f7.from_i64(3).mul(&f7.from_i64(5)), f7.from_i64(1));
        assert_eq!(f7.from_i64(3).inverse().unwrap(), f7.from_i64(5));
        assert_eq!(f7.from_i64(-1), f7.from_i64(6));
        assert_eq!(f7.from_i64(3).neg(), f7.from_i64(4));
        assert_eq!(f7.zero().neg(), f7.zero());
        assert_eq!(f7.zero().inverse(), None);
        assert_eq!(f7.from_bigint(&BigInt::from(-9)), f7.from_i64(5));
    }

    #[test]
    fn scalar_display_is_plain() {
        let q = FieldSpec::Rational;
        assert_eq!(q.from_i64(-2).to_string(), "-2");
        let half = Scalar::Rat(BigRational::new(BigInt::from(3), BigInt::from(2)));
        assert_eq!(half.to_string(), "3/2");
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.from_i64(9).to_string(), "4");
        assert_eq!(FieldSpec::Rational.to_string(), "Q");
        assert_eq!(f5.to_string(), "F5");
    }
}
