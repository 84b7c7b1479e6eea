use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::AlgebraError;

/// Exact scalar. Modular rings keep integer representatives in `[0, m)`.
pub type Scalar = BigRational;

/// Coefficient system of a presentation: `Z/m` for `m >= 2`, or `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CoefficientRing {
    Modular(u64),
    Rational,
}

impl CoefficientRing {
    pub fn modular(m: u64) -> Result<Self, AlgebraError> {
        if m < 2 {
            return Err(AlgebraError::InvalidModulus(m));
        }
        Ok(CoefficientRing::Modular(m))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            CoefficientRing::Modular(m) => Some(*m),
            CoefficientRing::Rational => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, c: i64) -> Scalar {
        self.reduce_int(BigInt::from(c))
    }

    fn reduce_int(&self, c: BigInt) -> Scalar {
        match self {
            CoefficientRing::Modular(m) => Scalar::from_integer(c.mod_floor(&BigInt::from(*m))),
            CoefficientRing::Rational => Scalar::from_integer(c),
        }
    }

    /// Brings an arbitrary rational into canonical form for this ring.
    ///
    /// In `Z/m` a fraction `a/b` is accepted only when `b` is a unit.
    pub fn try_scalar(&self, c: &BigRational) -> Result<Scalar, AlgebraError> {
        match self {
            CoefficientRing::Rational => Ok(c.clone()),
            CoefficientRing::Modular(m) => {
                let modulus = BigInt::from(*m);
                let inv = mod_inverse(&c.denom().mod_floor(&modulus), &modulus)
                    .ok_or_else(|| AlgebraError::NotInRing(c.to_string(), self.clone()))?;
                Ok(self.reduce_int(c.numer() * inv))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a + b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.normalize(-a)
    }

    fn normalize(&self, c: Scalar) -> Scalar {
        match self {
            CoefficientRing::Rational => c,
            // only integers flow through modular arithmetic
            CoefficientRing::Modular(_) => self.reduce_int(c.to_integer()),
        }
    }

    pub fn is_unit(&self, c: &Scalar) -> bool {
        match self {
            CoefficientRing::Rational => !c.is_zero(),
            CoefficientRing::Modular(m) => c.to_integer().gcd(&BigInt::from(*m)).is_one(),
        }
    }

    pub fn inverse(&self, c: &Scalar) -> Option<Scalar> {
        match self {
            CoefficientRing::Rational => (!c.is_zero()).then(|| c.recip()),
            CoefficientRing::Modular(m) => {
                let modulus = BigInt::from(*m);
                mod_inverse(&c.to_integer(), &modulus).map(|i| self.reduce_int(i))
            }
        }
    }

    /// Every unit of the ring that is worth trying as a scalar multiplier,
    /// `±1` first. For `Q` only `±1` are returned.
    pub fn small_units(&self) -> Vec<Scalar> {
        let mut out = vec![self.one(), self.from_int(-1)];
        if let CoefficientRing::Modular(m) = self {
            for c in 2..m.saturating_sub(1) {
                let s = self.from_int(c as i64);
                if self.is_unit(&s) {
                    out.push(s);
                }
            }
        }
        out.dedup();
        out
    }

    /// Symmetric representative used for display: `m - 1` prints as `-1`.
    pub fn signed_repr(&self, c: &Scalar) -> Scalar {
        match self {
            CoefficientRing::Rational => c.clone(),
            CoefficientRing::Modular(m) => {
                let v = c.to_integer();
                let m = BigInt::from(*m);
                if &v * 2 > m {
                    Scalar::from_integer(v - m)
                } else {
                    c.clone()
                }
            }
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Modular(m) => write!(f, "Z/{m}"),
            CoefficientRing::Rational => write!(f, "Q"),
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.abs().is_one() {
        Some((e.x * e.gcd.signum()).mod_floor(m))
    } else {
        None
    }
}

/// `c` as an `i64` when it is an integer that fits.
pub fn scalar_to_i64(c: &Scalar) -> Option<i64> {
    if c.is_integer() {
        c.to_integer().to_i64()
    } else {
        None
    }
}
