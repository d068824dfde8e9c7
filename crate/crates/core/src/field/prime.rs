use crate::error::{Error, Result};

use super::{Field, SqrtField};

/// The prime field F_p for an odd prime p below 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidInput(
                "characteristic 2 is not supported".into(),
            ));
        }
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not an odd prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Residue of an arbitrary integer.
    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn pow_u(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        acc
    }

    pub fn legendre(&self, a: u64) -> i32 {
        if a % self.p == 0 {
            0
        } else if self.pow_u(a, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.reduce(n)
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow_u(*a, self.p - 2))
        }
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl SqrtField for PrimeField {
    /// Tonelli-Shanks; returns the smaller of the two residues.
    fn sqrt(&self, a: &u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if self.legendre(a) != 1 {
            return None;
        }
        let r = if p % 4 == 3 {
            self.pow_u(a, (p + 1) / 4)
        } else {
            let mut q = p - 1;
            let mut s = 0u32;
            while q % 2 == 0 {
                q /= 2;
                s += 1;
            }
            let mut z = 2u64;
            while self.legendre(z) != -1 {
                z += 1;
            }
            let mut m = s;
            let mut c = self.pow_u(z, q);
            let mut t = self.pow_u(a, q);
            let mut r = self.pow_u(a, (q + 1) / 2);
            while t != 1 {
                let mut i = 0u32;
                let mut t2 = t;
                while t2 != 1 {
                    t2 = t2 * t2 % p;
                    i += 1;
                }
                let b = self.pow_u(c, 1u64 << (m - i - 1));
                m = i;
                c = b * b % p;
                t = t * c % p;
                r = r * b % p;
            }
            r
        };
        Some(r.min(p - r))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_two_and_composites() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn sqrt_matches_brute_force() {
        for p in [3u64, 5, 7, 13, 17, 41, 97] {
            let f = PrimeField::new(p).unwrap();
            for a in 0..p {
                let brute = (0..p).filter(|x| x * x % p == a).min();
                assert_eq!(f.sqrt(&a), brute, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
    }
}
