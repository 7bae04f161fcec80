//! Scalars of the two supported base fields: the rationals and GF(p).
//!
//! Everything downstream stores elements as vectors of these scalars, so
//! canonical form matters: rationals are kept fully reduced with a positive
//! denominator (num-rational guarantees this), residues are kept in `[0, p)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which base field a scalar belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    Rational,
    Prime(u64),
}

/// A canonical-form scalar of a base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseScalar {
    Rat(BigRational),
    Mod(u64),
}

impl BaseKind {
    pub fn characteristic(&self) -> u64 {
        match self {
            BaseKind::Rational => 0,
            BaseKind::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> BaseScalar {
        match self {
            BaseKind::Rational => BaseScalar::Rat(BigRational::zero()),
            BaseKind::Prime(_) => BaseScalar::Mod(0),
        }
    }

    pub fn one(&self) -> BaseScalar {
        match self {
            BaseKind::Rational => BaseScalar::Rat(BigRational::one()),
            BaseKind::Prime(_) => BaseScalar::Mod(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> BaseScalar {
        match self {
            BaseKind::Rational => BaseScalar::Rat(BigRational::from(BigInt::from(n))),
            BaseKind::Prime(p) => {
                let p = *p as i128;
                BaseScalar::Mod((((n as i128 % p) + p) % p) as u64)
            }
        }
    }

    pub fn add(&self, a: &BaseScalar, b: &BaseScalar) -> BaseScalar {
        match (self, a, b) {
            (BaseKind::Rational, BaseScalar::Rat(x), BaseScalar::Rat(y)) => BaseScalar::Rat(x + y),
            (BaseKind::Prime(p), BaseScalar::Mod(x), BaseScalar::Mod(y)) => {
                BaseScalar::Mod(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => panic!("base scalar does not match its field"),
        }
    }

    pub fn sub(&self, a: &BaseScalar, b: &BaseScalar) -> BaseScalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &BaseScalar) -> BaseScalar {
        match (self, a) {
            (BaseKind::Rational, BaseScalar::Rat(x)) => BaseScalar::Rat(-x),
            (BaseKind::Prime(p), BaseScalar::Mod(x)) => {
                BaseScalar::Mod(if *x == 0 { 0 } else { p - x })
            }
            _ => panic!("base scalar does not match its field"),
        }
    }

    pub fn mul(&self, a: &BaseScalar, b: &BaseScalar) -> BaseScalar {
        match (self, a, b) {
            (BaseKind::Rational, BaseScalar::Rat(x), BaseScalar::Rat(y)) => BaseScalar::Rat(x * y),
            (BaseKind::Prime(p), BaseScalar::Mod(x), BaseScalar::Mod(y)) => {
                BaseScalar::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("base scalar does not match its field"),
        }
    }

    pub fn inv(&self, a: &BaseScalar) -> Result<BaseScalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        match (self, a) {
            (BaseKind::Rational, BaseScalar::Rat(x)) => Ok(BaseScalar::Rat(x.recip())),
            (BaseKind::Prime(p), BaseScalar::Mod(x)) => Ok(BaseScalar::Mod(mod_inverse(*x, *p))),
            _ => panic!("base scalar does not match its field"),
        }
    }

    pub fn is_zero(&self, a: &BaseScalar) -> bool {
        match a {
            BaseScalar::Rat(x) => x.is_zero(),
            BaseScalar::Mod(x) => *x == 0,
        }
    }

    pub fn is_one(&self, a: &BaseScalar) -> bool {
        match a {
            BaseScalar::Rat(x) => x.is_one(),
            BaseScalar::Mod(x) => *x == 1,
        }
    }

    /// Parses the canonical string form: `"3"`, `"-3/2"` over Q, a residue
    /// over GF(p).
    pub fn parse(&self, s: &str) -> Result<BaseScalar> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt> {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Internal(format!("cannot parse `{t}` as an integer")))
        };
        match self {
            BaseKind::Rational => {
                let rat = if let Some((n, d)) = s.split_once('/') {
                    let den = parse_int(d)?;
                    if den.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    BigRational::new(parse_int(n)?, den)
                } else {
                    BigRational::from(parse_int(s)?)
                };
                Ok(BaseScalar::Rat(rat))
            }
            BaseKind::Prime(p) => {
                let n = parse_int(s)?;
                let p_big = BigInt::from(*p);
                let r = ((&n % &p_big) + &p_big) % &p_big;
                Ok(BaseScalar::Mod(r.to_u64().expect("residue fits in u64")))
            }
        }
    }

    pub fn format(&self, a: &BaseScalar) -> String {
        match a {
            BaseScalar::Rat(x) => {
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            BaseScalar::Mod(x) => x.to_string(),
        }
    }
}

impl BaseScalar {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            BaseScalar::Rat(x) => Some(x),
            BaseScalar::Mod(_) => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            BaseScalar::Rat(_) => None,
            BaseScalar::Mod(x) => Some(*x),
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Extended Euclid; p prime and a != 0 mod p.
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "inverse of a non-unit");
    (((old_s % p as i128) + p as i128) % p as i128) as u64
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let pow_mod = |mut base: u64, mut exp: u64, m: u64| -> u64 {
        let mut acc: u128 = 1;
        let mut b = base as u128 % m as u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % m as u128;
            }
            b = b * b % m as u128;
            exp >>= 1;
        }
        base = acc as u64;
        base
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = pow_mod(x, 2, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_reduces() {
        let k = BaseKind::Rational;
        let half = k.parse("1/2").unwrap();
        let third = k.parse("1/3").unwrap();
        let sum = k.add(&half, &third);
        assert_eq!(k.format(&sum), "5/6");
        let prod = k.mul(&half, &k.parse("2").unwrap());
        assert!(k.is_one(&prod));
    }

    #[test]
    fn prime_field_inverse() {
        let k = BaseKind::Prime(7);
        let three = k.from_i64(3);
        let inv = k.inv(&three).unwrap();
        assert_eq!(inv.as_residue(), Some(5));
        assert!(k.is_one(&k.mul(&three, &inv)));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let k = BaseKind::Rational;
        assert_eq!(k.inv(&k.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(7));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1));
        assert!(!is_prime(49));
    }
}
