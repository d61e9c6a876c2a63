//! Coefficient fields: prime fields GF(p) and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u32 = 32003;

/// A coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// GF(p) with `p` prime and below 2^31.
    Prime(u32),
    Rational,
}

/// A field element. `Mod` values lie in `[0, p)`; `Rat` values are kept in
/// lowest terms by `BigRational`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Mod(u32),
    Rat(BigRational),
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if p >= 1 << 31 {
            return Err(Error::InvalidRing(format!("characteristic {p} too large")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Prime(_) => Coeff::Mod(0),
            Field::Rational => Coeff::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            Field::Prime(_) => Coeff::Mod(1),
            Field::Rational => Coeff::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            Field::Prime(p) => Coeff::Mod(v.rem_euclid(*p as i64) as u32),
            Field::Rational => Coeff::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            Field::Prime(p) => {
                let r = v % BigInt::from(*p);
                let r = if r.is_negative() { r + BigInt::from(*p) } else { r };
                Coeff::Mod(r.to_u32().expect("residue fits"))
            }
            Field::Rational => Coeff::Rat(BigRational::from_integer(v.clone())),
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Mod(v) => *v == 0,
            Coeff::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Mod(v) => *v == 1,
            Coeff::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            (Field::Rational, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            _ => panic!("coefficient from a foreign field"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Prime(p), Coeff::Mod(x)) => Coeff::Mod(if *x == 0 { 0 } else { p - x }),
            (Field::Rational, Coeff::Rat(x)) => Coeff::Rat(-x),
            _ => panic!("coefficient from a foreign field"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (Field::Rational, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            _ => panic!("coefficient from a foreign field"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        assert!(!self.is_zero(a), "inverse of zero");
        match (self, a) {
            (Field::Prime(p), Coeff::Mod(x)) => {
                let (mut t, mut new_t) = (0i64, 1i64);
                let (mut r, mut new_r) = (*p as i64, *x as i64);
                while new_r != 0 {
                    let q = r / new_r;
                    (t, new_t) = (new_t, t - q * new_t);
                    (r, new_r) = (new_r, r - q * new_r);
                }
                Coeff::Mod(t.rem_euclid(*p as i64) as u32)
            }
            (Field::Rational, Coeff::Rat(x)) => Coeff::Rat(x.recip()),
            _ => panic!("coefficient from a foreign field"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    /// Uniform element of GF(p); for the rationals, a uniform integer in
    /// `[-1000, 1000]`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Coeff {
        match self {
            Field::Prime(p) => Coeff::Mod(rng.gen_range(0..*p)),
            Field::Rational => self.from_i64(rng.gen_range(-1000..=1000)),
        }
    }

    /// Uniform nonzero element.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Coeff {
        loop {
            let c = self.random(rng);
            if !self.is_zero(&c) {
                return c;
            }
        }
    }

    /// Symmetric integer representative for GF(p); `None` for non-integral
    /// rationals.
    pub fn to_signed(&self, a: &Coeff) -> Option<BigInt> {
        match (self, a) {
            (Field::Prime(p), Coeff::Mod(x)) => {
                let v = *x as i64;
                let p = *p as i64;
                Some(BigInt::from(if v > p / 2 { v - p } else { v }))
            }
            (Field::Rational, Coeff::Rat(r)) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    /// Human-readable form; GF(p) elements print as their symmetric
    /// representative so that `-1` stays `-1`.
    pub fn format(&self, a: &Coeff) -> String {
        match a {
            Coeff::Rat(r) => r.to_string(),
            Coeff::Mod(_) => self.to_signed(a).expect("prime field").to_string(),
        }
    }

    pub fn is_negative_repr(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rat(r) => r.is_negative(),
            Coeff::Mod(_) => self.to_signed(a).map(|v| v.is_negative()).unwrap_or(false),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Rational => write!(f, "QQ"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_characteristic() {
        assert!(Field::prime(32003).is_ok());
        assert!(Field::prime(32004).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn inverse_in_prime_field() {
        let f = Field::Prime(7);
        for v in 1..7 {
            let a = f.from_i64(v);
            assert!(f.is_one(&f.mul(&a, &f.inv(&a))));
        }
    }

    #[test]
    fn rationals_are_normalized() {
        let f = Field::Rational;
        let a = f.div(&f.from_i64(2), &f.from_i64(-4));
        assert_eq!(f.format(&a), "-1/2");
    }

    #[test]
    fn symmetric_representative() {
        let f = Field::Prime(32003);
        assert_eq!(f.format(&f.from_i64(-1)), "-1");
        assert_eq!(f.format(&f.from_i64(16001)), "16001");
        assert_eq!(f.format(&f.from_i64(16002)), "-16001");
    }
}
