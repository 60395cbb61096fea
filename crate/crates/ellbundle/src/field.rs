//! Exact coefficient arithmetic: the rationals and prime fields F_p with p > 3.
//!
//! Characteristics 2 and 3 are rejected because the cubics we work with carry
//! a factor of 4 and the classification formulas divide by 2 and 3.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("mixed fields: {0} vs {1}")]
    Mixed(Field, Field),
    #[error("division by zero")]
    DivisionByZero,
    #[error("characteristic {0} is not supported (need p > 3 prime)")]
    BadCharacteristic(u64),
    #[error("cannot parse field element from {0:?}")]
    Parse(String),
}

/// Field descriptor: the rationals or a prime field F_p, p > 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    pub fn validate(self) -> Result<Self, FieldError> {
        match self {
            Field::Q => Ok(self),
            Field::Fp(p) => {
                if p > 3 && is_prime(p) {
                    Ok(self)
                } else {
                    Err(FieldError::BadCharacteristic(p))
                }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element: a rational number or a residue carrying its modulus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldElem {
    Q(BigRational),
    Fp { p: u64, r: u64 },
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Q(_) => Field::Q,
            FieldElem::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn zero(field: Field) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: Field) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, v: i64) -> Self {
        match field {
            Field::Q => FieldElem::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Fp(p) => {
                let r = v.rem_euclid(p as i64) as u64;
                FieldElem::Fp { p, r }
            }
        }
    }

    pub fn from_rational(num: i64, den: i64) -> Self {
        FieldElem::Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Q(q) => q.is_zero(),
            FieldElem::Fp { r, .. } => *r == 0,
        }
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(FieldError::Mixed(self.field(), other.field()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a + b),
            (FieldElem::Fp { p, r: a }, FieldElem::Fp { r: b, .. }) => {
                FieldElem::Fp { p: *p, r: (a + b) % p }
            }
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldElem::Q(a) => FieldElem::Q(-a),
            FieldElem::Fp { p, r } => FieldElem::Fp { p: *p, r: (p - r) % p },
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElem::Q(a), FieldElem::Q(b)) => FieldElem::Q(a * b),
            (FieldElem::Fp { p, r: a }, FieldElem::Fp { r: b, .. }) => FieldElem::Fp {
                p: *p,
                r: ((*a as u128 * *b as u128) % *p as u128) as u64,
            },
            _ => unreachable!(),
        })
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            FieldElem::Q(a) => FieldElem::Q(a.recip()),
            FieldElem::Fp { p, r } => FieldElem::Fp { p: *p, r: mod_inv(*r, *p) },
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElem::one(self.field());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            k >>= 1;
        }
        acc
    }

    /// A square root in the field, if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        match self {
            FieldElem::Q(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
                    Some(FieldElem::Q(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            FieldElem::Fp { p, r } => (0..*p)
                .find(|y| (*y as u128 * *y as u128) % *p as u128 == *r as u128)
                .map(|y| FieldElem::Fp { p: *p, r: y }),
        }
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// Parse "p/q" or "p" in the given field (U+2212 minus accepted).
    pub fn parse(field: Field, s: &str) -> Result<Self, FieldError> {
        let norm: String = s.trim().chars().map(|c| if c == '\u{2212}' { '-' } else { c }).collect();
        let q = BigRational::from_str(&norm).map_err(|_| FieldError::Parse(s.to_string()))?;
        match field {
            Field::Q => Ok(FieldElem::Q(q)),
            Field::Fp(p) => {
                let pp = BigInt::from(p);
                let den = q.denom().mod_floor_u64(p);
                if den == 0 {
                    return Err(FieldError::DivisionByZero);
                }
                let num = ((q.numer() % &pp) + &pp) % &pp;
                let num: u64 = num.try_into().expect("reduced residue fits u64");
                Ok(FieldElem::Fp { p, r: mulmod(num, mod_inv(den, p), p) })
            }
        }
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let pp = BigInt::from(p);
        let r = ((self % &pp) + &pp) % &pp;
        r.try_into().expect("reduced residue fits u64")
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Extended Euclid; a != 0 mod p, p prime.
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inverse of non-unit");
    t.rem_euclid(p as i128) as u64
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Fp { r, .. } => write!(f, "{r}"),
        }
    }
}
