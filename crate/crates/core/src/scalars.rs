//! Exact coefficient fields: the rationals and prime fields `F_p`.
//!
//! Every [`Scalar`] carries its field, so mixing a rational with a residue is
//! detected instead of silently coerced. The checked `try_*` methods report
//! such mismatches; the operator impls panic on them and are meant for code
//! paths where the field has already been validated (polynomial and matrix
//! arithmetic inside a single ring).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Prime used for the fast cross-check field.
pub const DEFAULT_PRIME: u64 = 32003;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field descriptor `{0}` (expected `q` or `fp:P`)")]
    InvalidDescriptor(String),
}

/// The ground field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Rationals
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if is_prime(p) && p < (1u64 << 32) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(*p),
        }
    }

    /// Parses the CLI/job-file descriptor: `q` or `fp:P`.
    pub fn parse(desc: &str) -> Result<Self, ScalarError> {
        let d = desc.trim();
        if d.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(p) = d.strip_prefix("fp:") {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| ScalarError::InvalidDescriptor(desc.to_string()))?;
            return FieldSpec::prime(p);
        }
        Err(ScalarError::InvalidDescriptor(desc.to_string()))
    }

    pub fn descriptor(&self) -> String {
        match self {
            FieldSpec::Rationals => "q".to_string(),
            FieldSpec::PrimeField(p) => format!("fp:{p}"),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar(Repr::Q(BigRational::from_integer(BigInt::from(n)))),
            FieldSpec::PrimeField(p) => Scalar(Repr::Fp {
                value: n.rem_euclid(p as i64) as u64,
                p,
            }),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar(Repr::Q(BigRational::from_integer(n.clone()))),
            FieldSpec::PrimeField(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar(Repr::Fp {
                    value: r.to_u64().expect("residue fits"),
                    p,
                })
            }
        }
    }

    /// `num / den` in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, ScalarError> {
        self.from_bigint(num).try_div(&self.from_bigint(den))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = ScalarError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        FieldSpec::parse(&s)
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.descriptor()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Q(BigRational),
    Fp { value: u64, p: u64 },
}

/// An exact field element. Rationals are kept in lowest terms with a positive
/// denominator; residues lie in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

fn mod_inv(a: u64, p: u64) -> u64 {
    // a != 0 mod p, p prime
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i128) as u64
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Q(_) => FieldSpec::Rationals,
            Repr::Fp { p, .. } => FieldSpec::PrimeField(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Q(q) => q.is_zero(),
            Repr::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Q(q) => q.is_one(),
            Repr::Fp { value, .. } => *value == 1,
        }
    }

    /// True for rationals with negative sign. Residues are never negative.
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Q(q) => q.is_negative(),
            Repr::Fp { .. } => false,
        }
    }

    /// Numerator and denominator of a rational; `None` for residues.
    pub fn as_ratio(&self) -> Option<(&BigInt, &BigInt)> {
        match &self.0 {
            Repr::Q(q) => Some((q.numer(), q.denom())),
            Repr::Fp { .. } => None,
        }
    }

    /// Residue value for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Fp { value, .. } => Some(*value),
            Repr::Q(_) => None,
        }
    }

    fn check(&self, other: &Scalar) -> Result<(), ScalarError> {
        let (a, b) = (self.field(), other.field());
        if a == b {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(a, b))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a + b)),
            (Repr::Fp { value: a, p }, Repr::Fp { value: b, .. }) => Scalar(Repr::Fp {
                value: (a + b) % p,
                p: *p,
            }),
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a - b)),
            (Repr::Fp { value: a, p }, Repr::Fp { value: b, .. }) => Scalar(Repr::Fp {
                value: (a + p - b) % p,
                p: *p,
            }),
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a * b)),
            (Repr::Fp { value: a, p }, Repr::Fp { value: b, .. }) => Scalar(Repr::Fp {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            }),
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check(other)?;
        let inv = other.inv()?;
        self.try_mul(&inv)
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Q(a) => Scalar(Repr::Q(a.recip())),
            Repr::Fp { value, p } => Scalar(Repr::Fp {
                value: mod_inv(*value, *p),
                p: *p,
            }),
        })
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Q(a) => Scalar(Repr::Q(-a)),
            Repr::Fp { value, p } => Scalar(Repr::Fp {
                value: (p - value) % p,
                p: *p,
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Q(_) => write!(f, "{self}"),
            Repr::Fp { p, .. } => write!(f, "{self} (mod {p})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        FieldSpec::Rationals
            .from_ratio(&BigInt::from(n), &BigInt::from(d))
            .unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!((&q(1, 2) + &q(1, 3)).to_string(), "5/6");
    }

    #[test]
    fn prime_field_product() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(&f.from_i64(3) * &f.from_i64(4), f.from_i64(2));
        assert_eq!(f.from_i64(-1).residue(), Some(4));
    }

    #[test]
    fn inverse_and_errors() {
        let f = FieldSpec::prime(DEFAULT_PRIME).unwrap();
        let a = f.from_i64(1234);
        assert!((&a * &a.inv().unwrap()).is_one());
        assert_eq!(f.zero().inv(), Err(ScalarError::DivisionByZero));
        assert!(matches!(
            q(1, 2).try_add(&f.one()),
            Err(ScalarError::FieldMismatch(..))
        ));
        assert!(FieldSpec::prime(32004).is_err());
    }

    #[test]
    fn descriptors() {
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(
            FieldSpec::parse("fp:32003").unwrap(),
            FieldSpec::PrimeField(32003)
        );
        assert!(FieldSpec::parse("fp:10").is_err());
        assert!(FieldSpec::parse("r").is_err());
    }

    fn field_axioms(f: FieldSpec, a: Scalar, b: Scalar, c: Scalar) {
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&a + &b, &b + &a);
        assert_eq!(&a * &b, &b * &a);
        assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            assert_eq!(&a * &a.inv().unwrap(), f.one());
        }
    }

    fn rational() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
            field_axioms(FieldSpec::Rationals, a.clone(), b.clone(), c.clone());
            // canonical form: lowest terms, positive denominator
            for x in [&a + &b, &a * &b, &a - &c] {
                let (n, d) = x.as_ratio().unwrap();
                prop_assert!(d.is_positive());
                prop_assert!(n.gcd(d).is_one());
            }
        }

        #[test]
        fn prime_field_axioms(a in 0i64..32003, b in 0i64..32003, c in -100000i64..100000) {
            let f = FieldSpec::PrimeField(DEFAULT_PRIME);
            let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
            for x in [&a, &b, &c] {
                prop_assert!(x.residue().unwrap() < DEFAULT_PRIME);
            }
            field_axioms(f, a, b, c);
        }
    }
}
