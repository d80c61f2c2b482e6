//! Arithmetic in small finite fields `GF(p^e)`.
//!
//! Elements are encoded as integers `0..q` whose base-`p` digits are the
//! coefficients of a polynomial in a fixed primitive root `ω`, lowest degree
//! first. `0` is zero and `1` is one.

use alloc::vec;
use alloc::vec::Vec;

use crate::bounds::prime_power;
use crate::error::{Error, Result};

/// Largest field order supported.
pub const MAX_FIELD_ORDER: u64 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf {
    p: u32,
    e: u32,
    q: u32,
    /// `exp[k] = ω^k` for `k < q − 1`.
    exp: Vec<u32>,
    /// `log[x]` for `x ≠ 0`; `log[0]` is unused.
    log: Vec<u32>,
}

impl Gf {
    /// Builds `GF(q)` from the lexicographically smallest primitive monic
    /// polynomial of degree `e`.
    pub fn new(q: u64) -> Result<Gf> {
        let (p, e) = prime_power(q).ok_or_else(|| {
            Error::InvalidArgument(alloc::format!("{q} is not a prime power"))
        })?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::LimitExceeded {
                what: "field order",
                value: q as usize,
                limit: MAX_FIELD_ORDER as usize,
            });
        }
        let (p, q) = (p as u32, q as u32);
        // Candidate tails c_0..c_{e-1} of x^e + Σ c_i x^i, in increasing code order.
        for tail in 0..q {
            if let Some(exp) = powers_of_x(p, e, tail) {
                let mut log = vec![0; q as usize];
                for (k, &x) in exp.iter().enumerate() {
                    log[x as usize] = k as u32;
                }
                return Ok(Gf { p, e, q, exp, log });
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    /// The primitive root `ω`.
    pub fn generator(&self) -> u32 {
        self.exp[1 % self.exp.len()]
    }

    pub fn elements(&self) -> core::ops::Range<u32> {
        0..self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        digitwise(self.p, self.e, a, b, |x, y| (x + y) % self.p)
    }

    pub fn neg(&self, a: u32) -> u32 {
        digitwise(self.p, self.e, a, 0, |x, _| (self.p - x) % self.p)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[k as usize]
    }

    /// # Panics
    /// Panics on `a = 0`.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let k = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        self.exp[k as usize]
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let r = (self.log[a as usize] as u64 * k) % (self.q as u64 - 1);
        self.exp[r as usize]
    }

    /// `ω^k`, with `k` taken modulo `q − 1`.
    pub fn omega_pow(&self, k: u64) -> u32 {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize] % 2 == 0
    }

    /// `1, ω, …, ω^{e−1}`, a basis over the prime field.
    pub fn basis(&self) -> Vec<u32> {
        (0..self.e).map(|k| self.omega_pow(k as u64)).collect()
    }
}

fn digitwise(p: u32, e: u32, a: u32, b: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..e {
        out += f(a % p, b % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

/// Successive powers of `x` modulo `x^e + tail`, as codes, if `x` has
/// multiplicative order exactly `p^e − 1`.
fn powers_of_x(p: u32, e: u32, tail: u32) -> Option<Vec<u32>> {
    let e = e as usize;
    let mut c = vec![0u32; e];
    let mut t = tail;
    for ci in c.iter_mut() {
        *ci = t % p;
        t /= p;
    }
    if c[0] == 0 {
        return None;
    }
    let q = p.pow(e as u32);
    let mut cur = vec![0u32; e];
    cur[0] = 1;
    let mut exp = Vec::with_capacity(q as usize - 1);
    for k in 0..q - 1 {
        let code = cur.iter().rev().fold(0, |acc, &d| acc * p + d);
        if k > 0 && code == 1 {
            return None;
        }
        exp.push(code);
        // Multiply by x: shift up and reduce x^e = −Σ c_i x^i.
        let top = cur[e - 1];
        for i in (1..e).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        for i in 0..e {
            cur[i] = (cur[i] + (p - c[i]) % p * top) % p;
        }
    }
    let code = cur.iter().rev().fold(0, |acc, &d| acc * p + d);
    (code == 1).then_some(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Field axioms checked exhaustively.
    fn check_field(q: u64) {
        let f = Gf::new(q).unwrap();
        let q = q as u32;
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in [0, 1, f.generator(), q - 1] {
                    let lhs = f.mul(a, f.add(b, c));
                    assert_eq!(lhs, f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
        let mut seen: Vec<u32> = (0..q - 1).map(|k| f.omega_pow(k as u64)).collect();
        seen.sort_unstable();
        assert_eq!(seen, (1..q).collect::<Vec<_>>());
        // Frobenius is additive and multiplicative.
        for a in 0..q {
            for b in 0..q {
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            }
        }
    }

    #[test]
    fn small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27] {
            check_field(q);
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Gf::new(6).is_err());
        assert!(Gf::new(1).is_err());
    }

    #[test]
    fn squares_form_index_two_subgroup() {
        let f = Gf::new(9).unwrap();
        assert_eq!((1..9).filter(|&a| f.is_square(a)).count(), 4);
        assert_eq!(f.basis().len(), 2);
    }
}
