use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest modulus accepted for a prime field. Products of two residues
/// stay inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// The field every scalar, vector and matrix lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    /// Arbitrary-precision rationals.
    Rationals,
    /// Residues modulo a prime `p < 2^31`.
    Prime(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Prime field `GF(p)`, checked by trial division.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// Characteristic of a prime field, `None` over the rationals.
    pub fn modulus(&self) -> Option<u64> {
        match *self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.into())),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Image of an arbitrary rational; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        match *self {
            FieldSpec::Rationals => Ok(Scalar::Rational(r.clone())),
            FieldSpec::Prime(p) => {
                let reduce = |x: &BigInt| -> u64 {
                    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
                };
                let num = self.residue(reduce(r.numer()));
                let den = self.residue(reduce(r.denom()));
                num.checked_div(&den)
            }
        }
    }

    fn residue(&self, value: u64) -> Scalar {
        match *self {
            FieldSpec::Prime(p) => Scalar::Residue { value: value % p, modulus: p },
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(value.into())),
        }
    }

    /// Parses `"a"`, `"-a"` or `"a/b"`; over `GF(p)` the rational is reduced mod p.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid scalar {s:?}"));
        let r = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        self.from_rational(&r)
    }

    /// All elements of a prime field in increasing residue order.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match *self {
            FieldSpec::Rationals => Err(Error::FieldNotFinite),
            FieldSpec::Prime(p) => Ok((0..p).map(|v| self.residue(v)).collect()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let inner = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("invalid field {s:?}")))?;
        let p = inner
            .trim()
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("invalid field {s:?}")))?;
        FieldSpec::prime(p)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An exact field element that knows which field it belongs to.
///
/// Rationals are kept in lowest terms with a positive denominator
/// (guaranteed by `BigRational`); residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

/// Arithmetic selector mirroring the scalar operation table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Eq,
}

/// Result of [`scalar_arith`]: a field element or a truth value for `Eq`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithResult {
    Value(Scalar),
    Bool(bool),
}

/// Table-driven entry point over the scalar operations.
pub fn scalar_arith(op: ScalarOp, a: &Scalar, b: Option<&Scalar>) -> Result<ArithResult> {
    let rhs = || b.ok_or(Error::DimensionMismatch { expected: 2, found: 1 });
    Ok(match op {
        ScalarOp::Add => ArithResult::Value(a.checked_add(rhs()?)?),
        ScalarOp::Sub => ArithResult::Value(a.checked_sub(rhs()?)?),
        ScalarOp::Mul => ArithResult::Value(a.checked_mul(rhs()?)?),
        ScalarOp::Div => ArithResult::Value(a.checked_div(rhs()?)?),
        ScalarOp::Neg => ArithResult::Value(-a),
        ScalarOp::Inv => ArithResult::Value(a.inv()?),
        ScalarOp::Eq => {
            let b = rhs()?;
            a.same_field(b)?;
            ArithResult::Bool(a == b)
        }
    })
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Residue value, `None` over the rationals.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue { .. } => None,
        }
    }

    pub(crate) fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::MixedFields(self.field().to_string(), other.field().to_string()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: (a + b) % p, modulus: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: a * b % p, modulus: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

// Operator forms panic on mixed fields; use the `checked_*` methods when the
// operands come from unvalidated input.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect(concat!("Scalar ", stringify!($method)))
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Scalar {
    /// Absolute numerator plus denominator; a crude size measure for rationals.
    pub fn height(&self) -> BigInt {
        match self {
            Scalar::Rational(r) => r.numer().abs() + r.denom(),
            Scalar::Residue { value, .. } => BigInt::from(*value),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn rational_sum_in_lowest_terms() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!((&q(1, 2) + &q(1, 2)).to_string(), "1");
        assert_eq!(q(-4, 6).to_string(), "-2/3");
    }

    #[test]
    fn inverse_mod_seven() {
        let f = FieldSpec::prime(7).unwrap();
        assert_eq!(f.from_i64(3).inv().unwrap(), f.from_i64(5));
    }

    #[test]
    fn division_by_zero_is_reported() {
        let f = FieldSpec::prime(7).unwrap();
        assert_eq!(f.one().checked_div(&f.zero()), Err(Error::DivisionByZero));
        assert_eq!(q(1, 1).checked_div(&q(0, 1)), Err(Error::DivisionByZero));
        assert_eq!(FieldSpec::Rationals.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = FieldSpec::prime(5).unwrap().one();
        let b = FieldSpec::prime(7).unwrap().one();
        assert!(matches!(a.checked_add(&b), Err(Error::MixedFields(..))));
        assert!(matches!(a.checked_mul(&q(1, 2)), Err(Error::MixedFields(..))));
        assert!(matches!(
            scalar_arith(ScalarOp::Eq, &a, Some(&b)),
            Err(Error::MixedFields(..))
        ));
    }

    #[test]
    fn arith_table() {
        let f = FieldSpec::prime(7).unwrap();
        let r = scalar_arith(ScalarOp::Inv, &f.from_i64(3), None).unwrap();
        assert_eq!(r, ArithResult::Value(f.from_i64(5)));
        let r = scalar_arith(ScalarOp::Eq, &f.from_i64(3), Some(&f.from_i64(10))).unwrap();
        assert_eq!(r, ArithResult::Bool(true));
        let r = scalar_arith(ScalarOp::Add, &q(1, 2), Some(&q(1, 3))).unwrap();
        assert_eq!(r, ArithResult::Value(q(5, 6)));
    }

    #[test]
    fn primality_is_checked() {
        assert!(FieldSpec::prime(11).is_ok());
        assert_eq!(FieldSpec::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(FieldSpec::prime(1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn field_strings_round_trip() {
        for s in ["QQ", "GF(2)", "GF(101)"] {
            assert_eq!(s.parse::<FieldSpec>().unwrap().to_string(), s);
        }
        assert!("GF(4)".parse::<FieldSpec>().is_err());
        assert!("RR".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn scalar_parsing() {
        let gf = FieldSpec::prime(7).unwrap();
        assert_eq!(gf.parse_scalar("-1").unwrap(), gf.from_i64(6));
        assert_eq!(gf.parse_scalar("1/2").unwrap(), gf.from_i64(4));
        assert_eq!(gf.parse_scalar("1/7"), Err(Error::DivisionByZero));
        assert_eq!(FieldSpec::Rationals.parse_scalar("6/-4").unwrap(), q(-3, 2));
        assert!(FieldSpec::Rationals.parse_scalar("x").is_err());
    }

    fn field_strategy() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![
            Just(FieldSpec::Rationals),
            Just(FieldSpec::Prime(2)),
            Just(FieldSpec::Prime(3)),
            Just(FieldSpec::Prime(5)),
            Just(FieldSpec::Prime(101)),
        ]
    }

    fn element(field: FieldSpec) -> impl Strategy<Value = Scalar> {
        (-30i64..30, 1i64..12).prop_map(move |(n, d)| {
            field
                .from_rational(&BigRational::new(n.into(), d.into()))
                .unwrap_or_else(|_| field.from_i64(n))
        })
    }

    fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        field_strategy().prop_flat_map(|f| (element(f), element(f), element(f)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn string_round_trip(a in field_strategy().prop_flat_map(element)) {
            let back = a.field().parse_scalar(&a.to_string()).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
