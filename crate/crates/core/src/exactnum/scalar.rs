use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of an exact field: a rational number or a residue modulo a prime.
///
/// Rationals coerce into a prime field when combined with a residue, so
/// constants such as `Scalar::one()` can be mixed freely with residues.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn rational_mod(r: &BigRational, p: u64) -> Option<u64> {
    let den = reduce_bigint(r.denom(), p);
    if den == 0 {
        return None;
    }
    let num = reduce_bigint(r.numer(), p);
    Some(mul_mod(num, pow_mod(den, p - 2, p), p))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_i64(v: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(BigInt::from(v)))
    }

    /// The rational `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn residue(value: u64, modulus: u64) -> Self {
        Scalar::Mod {
            value: value % modulus,
            modulus,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Mod { modulus, .. } => Some(*modulus),
        }
    }

    /// Reduce into `F_p`; fails when the denominator vanishes modulo `p`.
    pub fn to_mod(&self, p: u64) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) => rational_mod(r, p)
                .map(|value| Scalar::Mod { value, modulus: p })
                .ok_or_else(|| Error::FieldMismatch(format!("{r} has no image modulo {p}"))),
            Scalar::Mod { value, modulus } if *modulus == p => Ok(Scalar::Mod {
                value: *value,
                modulus: p,
            }),
            Scalar::Mod { modulus, .. } => Err(Error::FieldMismatch(format!(
                "residue modulo {modulus} used where modulo {p} expected"
            ))),
        }
    }

    fn coerce_pair(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        match (a, b) {
            (Scalar::Rat(_), Scalar::Mod { modulus, .. }) => (
                a.to_mod(*modulus).expect("rational constant reducible modulo p"),
                b.clone(),
            ),
            (Scalar::Mod { modulus, .. }, Scalar::Rat(_)) => (
                a.clone(),
                b.to_mod(*modulus).expect("rational constant reducible modulo p"),
            ),
            (
                Scalar::Mod { modulus: p, .. },
                Scalar::Mod { modulus: q, .. },
            ) if p != q => panic!("mixing residues modulo {p} and {q}"),
            _ => unreachable!("coerce_pair called on same-kind scalars"),
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        match self {
            _ if self.is_zero() => Err(Error::SingularMatrix),
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
            Scalar::Mod { value, modulus } => Ok(Scalar::Mod {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            }),
        }
    }

    pub fn pow(&self, exp: i32) -> Scalar {
        let base = if exp < 0 {
            self.inverse().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = match self {
            Scalar::Mod { modulus, .. } => Scalar::residue(1, *modulus),
            Scalar::Rat(_) => Scalar::one(),
        };
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    fn add_ref(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (
                Scalar::Mod { value: a, modulus: p },
                Scalar::Mod { value: b, modulus: q },
            ) if p == q => Scalar::Mod {
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => {
                let (a, b) = Scalar::coerce_pair(self, other);
                a.add_ref(&b)
            }
        }
    }

    fn mul_ref(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (
                Scalar::Mod { value: a, modulus: p },
                Scalar::Mod { value: b, modulus: q },
            ) if p == q => Scalar::Mod {
                value: mul_mod(*a, *b, *p),
                modulus: *p,
            },
            _ => {
                let (a, b) = Scalar::coerce_pair(self, other);
                a.mul_ref(&b)
            }
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    /// Parse `"p/q"`, `"p"` or a plain integer.
    pub fn parse(s: &str) -> Result<Scalar> {
        let t = s.trim();
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = den.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Scalar::Rat(BigRational::new(n, d)))
    }

    /// A rough size measure used to keep random data small.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Rat(r) => {
                let n = r.numer().abs().to_u64().unwrap_or(u64::MAX);
                let d = r.denom().to_u64().unwrap_or(u64::MAX);
                n.max(d)
            }
            Scalar::Mod { value, .. } => *value,
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a == b,
            (
                Scalar::Mod { value: a, modulus: p },
                Scalar::Mod { value: b, modulus: q },
            ) => p == q && a == b,
            (Scalar::Rat(r), Scalar::Mod { value, modulus })
            | (Scalar::Mod { value, modulus }, Scalar::Rat(r)) => {
                rational_mod(r, *modulus) == Some(*value)
            }
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scalar::parse(s)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_i64(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::Rat(v)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Scalar::from_i64(v)),
            Raw::Str(s) => Scalar::parse(&s).map_err(serde::de::Error::custom),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_ref(b));
binop!(Sub, sub, |a, b| a.add_ref(&b.neg_ref()));
binop!(Mul, mul, |a, b| a.mul_ref(b));
binop!(Div, div, |a, b| a.mul_ref(&b.inverse().expect("division by zero")));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (&mut *self, rhs) {
            *a += b;
        } else {
            *self = self.add_ref(rhs);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (&mut *self, rhs) {
            *a -= b;
        } else {
            *self = self.add_ref(&rhs.neg_ref());
        }
    }
}

/// The ambient field of a computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Parse `q` or `fp:<prime>`.
    pub fn parse(s: &str) -> Result<Field> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        if let Some(p) = t.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime in field spec {s:?}")))?;
            if !is_prime(p) || p > u32::MAX as u64 {
                return Err(Error::Parse(format!("{p} is not a supported prime")));
            }
            return Ok(Field::Prime(p));
        }
        Err(Error::Parse(format!("unknown field {s:?}, use q or fp:<p>")))
    }

    pub fn embed(&self, s: &Scalar) -> Result<Scalar> {
        match self {
            Field::Rational => match s {
                Scalar::Rat(_) => Ok(s.clone()),
                Scalar::Mod { .. } => Err(Error::FieldMismatch(
                    "residue used in a rational computation".into(),
                )),
            },
            Field::Prime(p) => s.to_mod(*p),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.embed(&Scalar::from_i64(v)).expect("integers embed in every field")
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let s = Scalar::parse("-6/4").unwrap();
        assert_eq!(s.to_string(), "-3/2");
        assert_eq!(Scalar::parse(" 7 ").unwrap(), Scalar::from_i64(7));
        assert!(Scalar::parse("1/0").is_err());
        assert!(Scalar::parse("x").is_err());
    }

    #[test]
    fn residues_coerce() {
        let a = Scalar::residue(3, 7);
        let half = Scalar::ratio(1, 2);
        // 1/2 = 4 mod 7
        assert_eq!(&a * &half, Scalar::residue(5, 7));
        assert_eq!(half, Scalar::residue(4, 7));
        assert_eq!(a.inverse().unwrap(), Scalar::residue(5, 7));
        assert!(Scalar::residue(0, 7).inverse().is_err());
    }

    #[test]
    fn field_parse() {
        assert_eq!(Field::parse("q").unwrap(), Field::Rational);
        assert_eq!(Field::parse("fp:101").unwrap(), Field::Prime(101));
        assert!(Field::parse("fp:100").is_err());
        assert!(Field::Prime(3).embed(&Scalar::ratio(1, 3)).is_err());
    }

    #[test]
    fn pow_handles_negative_exponent() {
        assert_eq!(Scalar::from_i64(2).pow(-2), Scalar::ratio(1, 4));
        assert_eq!(Scalar::residue(2, 5).pow(3), Scalar::residue(3, 5));
    }
}
