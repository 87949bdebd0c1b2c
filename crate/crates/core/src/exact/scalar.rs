use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Base field: the rationals or a prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Field {
    Rationals,
    Prime { p: u64 },
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::usage(format!("{p} is not prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::usage(format!("prime {p} too large (must be < 2^32)")));
        }
        Ok(Field::Prime { p })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime { p } => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rat(Rational::Small(n, 1)),
            Field::Prime { p } => Scalar::Mod {
                v: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    /// n/d in this field; fails when d vanishes in the field.
    pub fn ratio(&self, n: i64, d: i64) -> Result<Scalar> {
        let den = self.int(d);
        let inv = den
            .inv()
            .ok_or_else(|| Error::usage(format!("denominator {d} is zero in {self}")))?;
        Ok(self.int(n) * inv)
    }

    /// Parses "n", "n/d" or "n mod p".
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = |m: &str| Error::usage(format!("bad scalar {s:?}: {m}"));
        if let Some((v, m)) = s.split_once("mod") {
            let m: u64 = m.trim().parse().map_err(|_| bad("modulus"))?;
            if *self != (Field::Prime { p: m }) {
                return Err(bad("modulus does not match field"));
            }
            let v: BigInt = v.trim().parse().map_err(|_| bad("residue"))?;
            return Ok(self.big_int(&v));
        }
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad("numerator"))?;
        let d: BigInt = d.parse().map_err(|_| bad("denominator"))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        match self {
            Field::Rationals => Ok(Scalar::Rat(Rational::from_big(BigRational::new(n, d)))),
            Field::Prime { .. } => {
                let den = self.big_int(&d);
                let inv = den.inv().ok_or_else(|| bad("denominator vanishes mod p"))?;
                Ok(self.big_int(&n) * inv)
            }
        }
    }

    fn big_int(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rat(Rational::from_big(BigRational::from_integer(n.clone()))),
            Field::Prime { p } => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Mod {
                    v: r.to_u64().expect("residue fits"),
                    p,
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

/// Reduced fraction, stored in machine words while it fits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    fn from_i128(n: i128, d: i128) -> Rational {
        debug_assert!(d != 0);
        let g = gcd_i128(n, d);
        let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Rational {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(r) => r.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n == 0,
            Rational::Big(r) => r.is_zero(),
        }
    }

    fn add(&self, o: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == d {
                return Rational::from_i128(a + c, b);
            }
            if let Some(n) = (a * d).checked_add(c * b) {
                return Rational::from_i128(n, b * d);
            }
        }
        Rational::from_big(self.to_big() + o.to_big())
    }

    fn mul(&self, o: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            return Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128);
        }
        Rational::from_big(self.to_big() * o.to_big())
    }

    fn neg(&self) -> Rational {
        match self {
            Rational::Small(n, d) => Rational::from_i128(-(*n as i128), *d as i128),
            Rational::Big(r) => Rational::from_big(-r),
        }
    }

    fn inv(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rational::Small(n, d) => Rational::from_i128(*d as i128, *n as i128),
            Rational::Big(r) => Rational::from_big(r.recip()),
        })
    }
}

/// Exact field element. Operations between different fields panic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Mod { v: u64, p: u64 },
}

fn field_mismatch() -> ! {
    panic!("scalar field mismatch")
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod { p, .. } => Field::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => *r == Rational::Small(1, 1),
            Scalar::Mod { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => r.inv().map(Scalar::Rat),
            Scalar::Mod { v, p } => {
                if *v == 0 {
                    None
                } else {
                    Some(Scalar::Mod {
                        v: pow_mod(*v, p - 2, *p),
                        p: *p,
                    })
                }
            }
        }
    }

    pub fn pow(&self, e: i64) -> Option<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut r = self.field().one();
        for _ in 0..e.unsigned_abs() {
            r = &r * &base;
        }
        Some(r)
    }

    /// Exact rational value, when over the rationals.
    pub fn to_big_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rat(r) => Some(r.to_big()),
            Scalar::Mod { .. } => None,
        }
    }

    fn add_ref(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.add(b)),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) if p == q => Scalar::Mod {
                v: (a + b) % p,
                p: *p,
            },
            _ => field_mismatch(),
        }
    }

    fn mul_ref(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.mul(b)),
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) if p == q => Scalar::Mod {
                v: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => field_mismatch(),
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.neg()),
            Scalar::Mod { v, p } => Scalar::Mod {
                v: (p - v) % p,
                p: *p,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(Rational::Small(n, 1)) => write!(f, "{n}"),
            Scalar::Rat(Rational::Small(n, d)) => write!(f, "{n}/{d}"),
            Scalar::Rat(Rational::Big(r)) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { v, p } => write!(f, "{v} mod {p}"),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_ref(b));
binop!(Sub, sub, |a, b| a.add_ref(&b.neg_ref()));
binop!(Mul, mul, |a, b| a.mul_ref(b));
binop!(Div, div, |a, b| a.mul_ref(&b.inv().expect("division by zero")));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = self.add_ref(o);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = self.add_ref(&o.neg_ref());
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = self.mul_ref(o);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_reduces() {
        let q = Field::Rationals;
        let a = q.ratio(1, 2).unwrap();
        let b = q.ratio(1, 3).unwrap();
        assert_eq!((&a + &b).to_string(), "5/6");
        assert_eq!((&a * &b).to_string(), "1/6");
        assert_eq!((&a - &a).to_string(), "0");
        assert_eq!((q.int(4) / q.int(-6)).to_string(), "-2/3");
    }

    #[test]
    fn overflow_promotes_to_big() {
        let q = Field::Rationals;
        let big = q.int(i64::MAX);
        let sq = &big * &big;
        assert_eq!(sq.to_string(), "85070591730234615847396907784232501249");
        let back = &sq / &big;
        assert_eq!(back, big);
        assert_eq!(&(&big + &big) - &big, big);
    }

    #[test]
    fn prime_field_inverse() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.int(2).inv().unwrap(), f7.int(4));
        assert_eq!(f7.int(3).inv().unwrap(), f7.int(5));
        assert_eq!(f7.int(-1).to_string(), "6 mod 7");
        assert!(f7.int(0).inv().is_none());
    }

    #[test]
    fn parse_round_trip() {
        let q = Field::Rationals;
        for s in ["0", "-3", "7/4", "-1/2"] {
            assert_eq!(q.parse(s).unwrap().to_string(), s);
        }
        assert_eq!(q.parse("4/8").unwrap().to_string(), "1/2");
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.parse("3 mod 7").unwrap(), f7.int(3));
        assert_eq!(f7.parse("1/3").unwrap(), f7.int(5));
        assert!(f7.parse("1 mod 5").is_err());
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
    }

    #[test]
    fn non_prime_rejected() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn powers() {
        let q = Field::Rationals;
        assert_eq!(q.int(2).pow(-3).unwrap(), q.ratio(1, 8).unwrap());
        assert_eq!(q.int(0).pow(0).unwrap(), q.one());
        assert!(q.int(0).pow(-1).is_none());
    }
}
