//! Exact integer helpers: Stirling-type factorial bounds, Gaussian binomials,
//! primes of the form `(q^ℓ − 1)/(q − 1)` and classical group orders.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::perm::{is_prime, smallest_prime_factor};

/// Outcome of [`stirling_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingReport {
    pub holds: bool,
    /// Smallest `m` in range with `m! > (c·m)^m`.
    pub first_failure: Option<u64>,
    pub checked: u64,
}

/// Checks `m! ≤ (c·m)^m` for every `m` in `m_low..=m_high` by exact integer
/// comparison of `m!·den^m` with `(num·m)^m`.
///
/// # Panics
/// Panics unless `c > 0` and `m_low ≥ 1`.
pub fn stirling_check(c: &BigRational, m_low: u64, m_high: u64) -> StirlingReport {
    assert!(m_low >= 1, "m_low must be positive");
    assert!(*c > BigRational::zero(), "constant must be positive");
    let num = c.numer().magnitude().clone();
    let den = c.denom().magnitude().clone();
    let mut fact: BigUint = (1..m_low).fold(BigUint::one(), |a, k| a * k);
    let mut first_failure = None;
    let mut checked = 0;
    for m in m_low..=m_high {
        fact *= m;
        checked += 1;
        let lhs = &fact * den.pow(m as u32);
        let rhs = (&num * m).pow(m as u32);
        if lhs > rhs {
            first_failure = Some(m);
            break;
        }
    }
    StirlingReport {
        holds: first_failure.is_none(),
        first_failure,
        checked,
    }
}

/// `(p, e)` with `q = p^e` and `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let mut r = q;
    let mut e = 0;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// Number of `k`-dimensional subspaces of `F_q^d`.
///
/// Returns `None` when `k > d` or `q < 2`.
pub fn gaussian_binomial(d: u32, k: u32, q: u64) -> Option<BigUint> {
    if k > d || q < 2 {
        return None;
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow(d - i) - 1u32;
        den *= q.pow(i + 1) - 1u32;
    }
    debug_assert!((&num % &den).is_zero());
    Some(num / den)
}

fn repunit(q: u64, l: u32) -> Option<u64> {
    let mut acc: u64 = 0;
    for _ in 0..l {
        acc = acc.checked_mul(q)?.checked_add(1)?;
    }
    Some(acc)
}

/// All `(q, ℓ)` with `q` a prime power, `ℓ ≥ 2` and `(q^ℓ−1)/(q−1) = p`,
/// sorted by `ℓ`.
pub fn prime_form_solutions(p: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut l = 2u32;
    // The smallest repunit of length ℓ is 2^ℓ − 1.
    while repunit(2, l).is_some_and(|r| r <= p) {
        // (q^ℓ−1)/(q−1) > q^(ℓ−1), so q < p^(1/(ℓ−1)) + 1.
        let top = p.nth_root(l - 1) + 1;
        let (mut lo, mut hi) = (2u64, top);
        while lo <= hi {
            let mid = lo + (hi - lo) / 2;
            match repunit(mid, l) {
                Some(v) if v == p => {
                    if prime_power(mid).is_some() {
                        out.push((mid, l));
                    }
                    break;
                }
                Some(v) if v < p => lo = mid + 1,
                _ => hi = mid - 1,
            }
        }
        l += 1;
    }
    out
}

/// Primes in `lo..hi` admitting at least one representation in
/// [`prime_form_solutions`].
pub fn prime_form_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo..hi)
        .filter(|&p| is_prime(p) && !prime_form_solutions(p).is_empty())
        .collect()
}

pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&p| is_prime(p)).collect()
}

/// The largest `ℓ ≥ 2` with `n = m^ℓ`, together with `m`.
pub fn perfect_power(n: u64) -> Option<(u64, u32)> {
    if n < 4 {
        return None;
    }
    let mut best = None;
    for l in 2..64u32 {
        let m = n.nth_root(l);
        if m < 2 {
            break;
        }
        if m.checked_pow(l) == Some(n) {
            best = Some((m, l));
        }
    }
    best
}

/// `|GL_d(q)|`.
pub fn gl_order(d: u32, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let qd = q.pow(d);
    (0..d).fold(BigUint::one(), |acc, i| acc * (&qd - q.pow(i)))
}

/// `|AGL_d(q)| = q^d · |GL_d(q)|`.
pub fn agl_order(d: u32, q: u64) -> BigUint {
    BigUint::from(q).pow(d) * gl_order(d, q)
}

/// `|Sp_{2r}(q)| = q^{r²} Π_{i=1}^{r} (q^{2i} − 1)`.
pub fn sp_order(r: u32, q: u64) -> BigUint {
    let q = BigUint::from(q);
    (1..=r).fold(q.pow(r * r), |acc, i| acc * (q.pow(2 * i) - 1u32))
}
