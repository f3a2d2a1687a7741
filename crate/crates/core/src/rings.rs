//! Exact coefficient rings: ℤ, ℚ, 𝔽_p and ℤ/m.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One of the four supported coefficient rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
    IntegersMod(u64),
}

/// A ring element in canonical form.
///
/// Integers and residues use `Int` (residues lie in `[0, m)`); rationals use
/// `Rat` in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElement {
    Int(BigInt),
    Rat(BigRational),
}

/// Result of [`Ring::classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Zero,
    Unit(RingElement),
    NonUnitNonZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

pub fn is_prime(p: u64) -> bool {
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

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(Error::InvalidRing(format!("{p} is not prime")))
        }
    }

    pub fn integers_mod(m: u64) -> Result<Ring> {
        if m >= 2 {
            Ok(Ring::IntegersMod(m))
        } else {
            Err(Error::InvalidRing(format!("modulus {m} < 2")))
        }
    }

    /// The modulus for finite rings.
    pub fn modulus(self) -> Option<u64> {
        match self {
            Ring::PrimeField(p) => Some(p),
            Ring::IntegersMod(m) => Some(m),
            _ => None,
        }
    }

    pub fn modulus_big(self) -> Option<BigInt> {
        self.modulus().map(BigInt::from)
    }

    pub fn is_field(self) -> bool {
        match self {
            Ring::Integers => false,
            Ring::Rationals | Ring::PrimeField(_) => true,
            Ring::IntegersMod(m) => is_prime(m),
        }
    }

    pub fn zero(self) -> RingElement {
        match self {
            Ring::Rationals => RingElement::Rat(BigRational::zero()),
            _ => RingElement::Int(BigInt::zero()),
        }
    }

    pub fn one(self) -> RingElement {
        match self {
            Ring::Rationals => RingElement::Rat(BigRational::one()),
            _ => RingElement::Int(BigInt::one()),
        }
    }

    pub fn from_i64(self, v: i64) -> RingElement {
        self.from_bigint(BigInt::from(v))
    }

    /// Image of an integer under the canonical map ℤ → R.
    pub fn from_bigint(self, v: BigInt) -> RingElement {
        match self {
            Ring::Integers => RingElement::Int(v),
            Ring::Rationals => RingElement::Rat(BigRational::from_integer(v)),
            Ring::PrimeField(m) | Ring::IntegersMod(m) => {
                RingElement::Int(v.mod_floor(&BigInt::from(m)))
            }
        }
    }

    pub fn from_rational(self, v: BigRational) -> Result<RingElement> {
        match self {
            Ring::Rationals => Ok(RingElement::Rat(v)),
            _ if v.is_integer() => Ok(self.from_bigint(v.to_integer())),
            _ => Err(Error::RingMismatch(format!("{v} is not in {self}"))),
        }
    }

    /// True when `a` is a canonical element of this ring.
    pub fn contains(self, a: &RingElement) -> bool {
        match (self, a) {
            (Ring::Integers, RingElement::Int(_)) => true,
            (Ring::Rationals, RingElement::Rat(_)) => true,
            (Ring::PrimeField(m) | Ring::IntegersMod(m), RingElement::Int(v)) => {
                !v.is_negative() && *v < BigInt::from(m)
            }
            _ => false,
        }
    }

    fn check(self, a: &RingElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{a:?} is not an element of {self}"
            )))
        }
    }

    /// Checked arithmetic. `b` is ignored for `Neg`.
    pub fn arith(self, op: ArithOp, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        if op != ArithOp::Neg {
            self.check(b)?;
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Neg => self.neg(a),
        })
    }

    pub fn add(self, a: &RingElement, b: &RingElement) -> RingElement {
        match (a, b) {
            (RingElement::Int(x), RingElement::Int(y)) => self.from_bigint(x + y),
            (RingElement::Rat(x), RingElement::Rat(y)) => RingElement::Rat(x + y),
            _ => panic!("mixed ring elements"),
        }
    }

    pub fn sub(self, a: &RingElement, b: &RingElement) -> RingElement {
        match (a, b) {
            (RingElement::Int(x), RingElement::Int(y)) => self.from_bigint(x - y),
            (RingElement::Rat(x), RingElement::Rat(y)) => RingElement::Rat(x - y),
            _ => panic!("mixed ring elements"),
        }
    }

    pub fn mul(self, a: &RingElement, b: &RingElement) -> RingElement {
        match (a, b) {
            (RingElement::Int(x), RingElement::Int(y)) => self.from_bigint(x * y),
            (RingElement::Rat(x), RingElement::Rat(y)) => RingElement::Rat(x * y),
            _ => panic!("mixed ring elements"),
        }
    }

    pub fn neg(self, a: &RingElement) -> RingElement {
        match a {
            RingElement::Int(x) => self.from_bigint(-x),
            RingElement::Rat(x) => RingElement::Rat(-x),
        }
    }

    pub fn is_zero(self, a: &RingElement) -> bool {
        a.is_zero()
    }

    pub fn classify(self, a: &RingElement) -> Classification {
        if a.is_zero() {
            return Classification::Zero;
        }
        match self.inverse(a) {
            Some(inv) => Classification::Unit(inv),
            None => Classification::NonUnitNonZero,
        }
    }

    pub fn is_unit(self, a: &RingElement) -> bool {
        self.inverse(a).is_some()
    }

    pub fn inverse(self, a: &RingElement) -> Option<RingElement> {
        match (self, a) {
            (Ring::Integers, RingElement::Int(x)) => {
                if x.abs().is_one() {
                    Some(a.clone())
                } else {
                    None
                }
            }
            (Ring::Rationals, RingElement::Rat(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(RingElement::Rat(x.recip()))
                }
            }
            (Ring::PrimeField(m) | Ring::IntegersMod(m), RingElement::Int(x)) => {
                let m = BigInt::from(m);
                let e = x.extended_gcd(&m);
                if e.gcd.is_one() {
                    Some(RingElement::Int(e.x.mod_floor(&m)))
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Some `c` with `b·c = a`, if one exists.
    pub fn divide(self, a: &RingElement, b: &RingElement) -> Option<RingElement> {
        match (self, a, b) {
            (Ring::Integers, RingElement::Int(x), RingElement::Int(y)) => {
                if y.is_zero() {
                    return if x.is_zero() { Some(self.zero()) } else { None };
                }
                let (q, r) = x.div_rem(y);
                if r.is_zero() {
                    Some(RingElement::Int(q))
                } else {
                    None
                }
            }
            (Ring::Rationals, RingElement::Rat(x), RingElement::Rat(y)) => {
                if y.is_zero() {
                    if x.is_zero() {
                        Some(self.zero())
                    } else {
                        None
                    }
                } else {
                    Some(RingElement::Rat(x / y))
                }
            }
            (
                Ring::PrimeField(m) | Ring::IntegersMod(m),
                RingElement::Int(x),
                RingElement::Int(y),
            ) => {
                let m = BigInt::from(m);
                let g = y.gcd(&m);
                if !x.is_multiple_of(&g) {
                    return None;
                }
                let m2 = &m / &g;
                let y2 = (y / &g).mod_floor(&m2);
                let inv = if m2.is_one() {
                    BigInt::zero()
                } else {
                    y2.extended_gcd(&m2).x.mod_floor(&m2)
                };
                Some(self.from_bigint((x / &g) * inv))
            }
            _ => None,
        }
    }

    /// `(gcd, lcm)`: over ℤ with `gcd ≥ 0`; fields (including ℤ/p) use the
    /// 0/1 convention.
    pub fn gcd_lcm(self, a: &RingElement, b: &RingElement) -> Result<(RingElement, RingElement)> {
        self.check(a)?;
        self.check(b)?;
        match (self, a, b) {
            (Ring::Integers, RingElement::Int(x), RingElement::Int(y)) => {
                let g = x.gcd(y);
                let l = if g.is_zero() {
                    BigInt::zero()
                } else {
                    (x * y).abs() / &g
                };
                Ok((RingElement::Int(g), RingElement::Int(l)))
            }
            _ if self.is_field() => {
                let unit = |z: bool| if z { self.zero() } else { self.one() };
                let g = unit(a.is_zero() && b.is_zero());
                let l = unit(a.is_zero() || b.is_zero());
                Ok((g, l))
            }
            _ => Err(Error::Unsupported(format!("gcd/lcm over {self}"))),
        }
    }

    /// Canonical associate: `|a|` over ℤ, `gcd(a, m)` over ℤ/m, `0/1` over
    /// fields. Two elements generate the same ideal iff their associates agree.
    pub fn associate(self, a: &RingElement) -> RingElement {
        match (self, a) {
            (Ring::Integers, RingElement::Int(x)) => RingElement::Int(x.abs()),
            (Ring::Rationals, _) => {
                if a.is_zero() {
                    self.zero()
                } else {
                    self.one()
                }
            }
            (Ring::PrimeField(m) | Ring::IntegersMod(m), RingElement::Int(x)) => {
                let g = x.gcd(&BigInt::from(m));
                self.from_bigint(g)
            }
            _ => a.clone(),
        }
    }

    /// Generator of the ideal `(a, b)`.
    pub fn ideal_sum(self, a: &RingElement, b: &RingElement) -> RingElement {
        match (self, a, b) {
            (Ring::Rationals, _, _) => {
                self.associate(&self.add(&self.associate(a), &self.associate(b)))
            }
            (_, RingElement::Int(x), RingElement::Int(y)) => {
                self.associate(&self.from_bigint(x.gcd(y)))
            }
            _ => panic!("mixed ring elements"),
        }
    }

    /// Integer representative (ℤ and residue rings only).
    pub fn lift(self, a: &RingElement) -> BigInt {
        match a {
            RingElement::Int(x) => x.clone(),
            RingElement::Rat(_) => panic!("cannot lift a rational to ℤ"),
        }
    }

    pub fn parse_element(self, s: &str) -> Result<RingElement> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid element {s:?} for ring {self}"));
        match self {
            Ring::Rationals => {
                if let Some((p, q)) = s.split_once('/') {
                    let p: BigInt = p.parse().map_err(|_| bad())?;
                    let q: BigInt = q.parse().map_err(|_| bad())?;
                    if !q.is_positive() || !p.gcd(&q).is_one() {
                        return Err(bad());
                    }
                    Ok(RingElement::Rat(BigRational::new(p, q)))
                } else {
                    let p: BigInt = s.parse().map_err(|_| bad())?;
                    Ok(RingElement::Rat(BigRational::from_integer(p)))
                }
            }
            _ => {
                let v: BigInt = s.parse().map_err(|_| bad())?;
                let e = RingElement::Int(v);
                if self.contains(&e) {
                    Ok(e)
                } else {
                    Err(bad())
                }
            }
        }
    }

    pub fn format_element(self, a: &RingElement) -> String {
        match a {
            RingElement::Int(x) => x.to_string(),
            RingElement::Rat(x) => format!("{}/{}", x.numer(), x.denom()),
        }
    }
}

impl RingElement {
    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Int(x) => x.is_zero(),
            RingElement::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RingElement::Int(x) => x.is_one(),
            RingElement::Rat(x) => x.is_one(),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Int(x) => write!(f, "{x}"),
            RingElement::Rat(x) => write!(f, "{}/{}", x.numer(), x.denom()),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F_{p}"),
            Ring::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        let bad = || Error::Parse(format!("unknown ring {s:?}"));
        match s.trim() {
            "Z" => Ok(Ring::Integers),
            "Q" => Ok(Ring::Rationals),
            t => {
                if let Some(p) = t.strip_prefix("F_") {
                    Ring::prime_field(p.parse().map_err(|_| bad())?)
                } else if let Some(m) = t.strip_prefix("Z/") {
                    Ring::integers_mod(m.parse().map_err(|_| bad())?)
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Ring, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64) -> RingElement {
        Ring::Integers.from_i64(v)
    }

    #[test]
    fn integer_examples() {
        let r = Ring::Integers;
        assert_eq!(r.arith(ArithOp::Add, &z(2), &z(3)).unwrap(), z(5));
        assert_eq!(r.classify(&z(-1)), Classification::Unit(z(-1)));
        assert_eq!(r.gcd_lcm(&z(4), &z(6)).unwrap(), (z(2), z(12)));
        assert_eq!(r.gcd_lcm(&z(0), &z(5)).unwrap(), (z(5), z(0)));
    }

    #[test]
    fn residue_examples() {
        let r = Ring::IntegersMod(6);
        let e = |v| r.from_i64(v);
        assert_eq!(r.arith(ArithOp::Mul, &e(2), &e(3)).unwrap(), e(0));
        assert_eq!(r.classify(&e(5)), Classification::Unit(e(5)));
        assert_eq!(r.classify(&e(2)), Classification::NonUnitNonZero);
        assert!(r.gcd_lcm(&e(2), &e(3)).is_err());
        assert_eq!(r.divide(&e(4), &e(2)).map(|c| r.mul(&c, &e(2))), Some(e(4)));
        assert_eq!(r.divide(&e(3), &e(2)), None);
    }

    #[test]
    fn field_convention() {
        let r = Ring::PrimeField(7);
        assert_eq!(
            r.gcd_lcm(&r.from_i64(3), &r.from_i64(5)).unwrap(),
            (r.one(), r.one())
        );
        assert!(Ring::prime_field(9).is_err());
    }

    #[test]
    fn rational_text() {
        let q = Ring::Rationals;
        let a = q.parse_element("1/2").unwrap();
        let b = q.parse_element("1/3").unwrap();
        assert_eq!(q.format_element(&q.add(&a, &b)), "5/6");
        assert_eq!(q.format_element(&q.from_i64(3)), "3/1");
        assert!(q.parse_element("2/4").is_err());
        assert!(Ring::IntegersMod(6).parse_element("6").is_err());
    }

    #[test]
    fn ring_text_round_trip() {
        for r in [
            Ring::Integers,
            Ring::Rationals,
            Ring::PrimeField(5),
            Ring::IntegersMod(12),
        ] {
            assert_eq!(r.to_string().parse::<Ring>().unwrap(), r);
        }
    }
}
