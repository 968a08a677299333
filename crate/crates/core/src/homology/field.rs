use serde::Serialize;

use super::HomologyError;

/// Characteristic used when neither the caller nor `POSETLAB_FIELD` picks one.
pub const DEFAULT_CHARACTERISTIC: u32 = 101;
pub const FIELD_ENV: &str = "POSETLAB_FIELD";

/// The prime field `F_p`, elements stored as `u32` in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, HomologyError> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(HomologyError::InvalidField(p as u64));
        }
        Ok(PrimeField { p })
    }

    /// `POSETLAB_FIELD` if set, otherwise `F_101`.
    pub fn from_env() -> Result<Self, HomologyError> {
        match std::env::var(FIELD_ENV) {
            Ok(s) => {
                let p: u64 = s.trim().parse().map_err(|_| HomologyError::InvalidFieldText(s.clone()))?;
                u32::try_from(p).map_err(|_| HomologyError::InvalidField(p)).and_then(Self::new)
            }
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.pow(a, self.p as u64 - 2)
    }

    /// Image of a signed integer.
    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Representative in `(-p/2, p/2]`, handy for printing small coefficients.
    pub fn to_signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_CHARACTERISTIC }
    }
}
