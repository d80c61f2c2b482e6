//! Counting functions bounding the subsets fixed by wreath products in
//! product action and by symmetric groups acting on pairs.
//!
//! The `F` family is indexed by a perfect square `n = m²`, the `G` family by
//! `m` itself.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::One;

use super::expr::{BoundExpression, ExponentExpr, ScaledPower, Term};
use super::interval::Interval;
use super::PRECISION_LADDER;
use crate::error::{Error, Result};
use crate::group::PrimeOrderClassTable;
use crate::perm::is_prime;

/// Exact `√n`, or [`Error::NotPerfectSquare`].
pub fn exact_sqrt(n: u64) -> Result<u64> {
    let m = n.sqrt();
    if m * m == n {
        Ok(m)
    } else {
        Err(Error::NotPerfectSquare(n))
    }
}

/// `m (m−1) ⋯ (m−k+1)`.
pub fn falling_factorial(m: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (m - i))
}

pub fn factorial(k: u64) -> BigUint {
    falling_factorial(k, k)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn big(n: u64) -> ExponentExpr {
    ExponentExpr::constant(int(n))
}

fn wreath_side(n: u64) -> Result<u64> {
    let m = exact_sqrt(n)?;
    if m < 2 {
        return Err(Error::InvalidArgument(format!("need √n ≥ 2, got n = {n}")));
    }
    Ok(m)
}

/// Exponent of `F₀(n) = 2^{n/2 + √n/2 + (√n−1)·log₂√n}`.
pub fn f0(n: u64) -> Result<ExponentExpr> {
    let m = wreath_side(n)?;
    Ok(big(n).scale(&rat(1, 2))
        + big(m).scale(&rat(1, 2))
        + ExponentExpr::log2(m).scale(&int(m - 1)))
}

/// Exponent of `F′(n) = 2^{n − 11√n/2 + 8(log₂√n)² − 4 log₂√n}`.
pub fn f_prime(n: u64) -> Result<ExponentExpr> {
    let m = wreath_side(n)?;
    let l = ExponentExpr::log2(m);
    Ok(big(n) - big(m).scale(&rat(11, 2)) + (l.clone() * l.clone()).scale(&int(8))
        - l.scale(&int(4)))
}

/// Exponent of `F″(n) = 2^{n + 2√n·log₂(0.3967) + √n}`.
pub fn f_double_prime(n: u64) -> Result<ExponentExpr> {
    let m = wreath_side(n)?;
    Ok(big(n) + ExponentExpr::log2_ratio(3967, 10_000).scale(&int(2 * m)) + big(m))
}

fn check_class(p: u64, parts: &[u64], m: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let total: u64 = parts.iter().sum::<u64>() * p;
    if total == 0 || total >= 11 {
        return Err(Error::InvalidArgument(format!(
            "need 0 < p·(cycle count) < 11, got {total}"
        )));
    }
    if let Some(&k) = parts.iter().find(|&&k| p * k > m) {
        return Err(Error::InvalidArgument(format!(
            "{k} cycles of length {p} do not fit on {m} points"
        )));
    }
    Ok(())
}

/// `Σ 2^{orb(C)}` over prime-order subgroups `⟨(h₁,h₂)⟩` of the base group
/// of `Sym(√n) ≀ Sym(2)` with `h₁` of type `p^i` and `h₂` of type `p^j`.
pub fn f_p_ij(n: u64, p: u64, i: u64, j: u64) -> Result<ScaledPower> {
    let m = exact_sqrt(n)?;
    check_class(p, &[i, j], m)?;
    let num = falling_factorial(m, p * i) * falling_factorial(m, p * j);
    let den = BigUint::from(p - 1)
        * BigUint::from(p).pow((i + j) as u32)
        * factorial(i)
        * factorial(j);
    let exponent = n as i64 - ((i + j) * (p - 1) * m) as i64 + (i * j * p * (p - 1)) as i64;
    Ok(ScaledPower {
        coefficient: BigRational::new(num.into(), den.into()),
        exponent,
    })
}

/// Number of subgroups counted by [`f_p_ij`].
pub fn class_size_p_ij(m: u64, p: u64, i: u64, j: u64) -> Result<BigRational> {
    check_class(p, &[i, j], m)?;
    let num = falling_factorial(m, p * i) * falling_factorial(m, p * j);
    let den = BigUint::from(p - 1)
        * BigUint::from(p).pow((i + j) as u32)
        * factorial(i)
        * factorial(j);
    Ok(BigRational::new(num.into(), den.into()))
}

/// Triples `(p, i, j)` with `0 < p(i+j) < 11` that fit on `m` points.
pub fn wreath_classes(m: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7] {
        for i in 0..=10 / p {
            for j in 0..=10 / p {
                let s = p * (i + j);
                if s > 0 && s < 11 && p * i <= m && p * j <= m {
                    out.push((p, i, j));
                }
            }
        }
    }
    out
}

/// `F(n) = F₀ + F′ + F″ + Σ F^p_{i,j}` for `n = m²`, `m ≥ 5`. Triples whose
/// cycles do not fit on `m` points are empty classes and are skipped.
pub fn f_total(n: u64) -> Result<BoundExpression> {
    let m = exact_sqrt(n)?;
    if m < 5 {
        return Err(Error::InvalidArgument(format!("F(n) needs n ≥ 25, got {n}")));
    }
    let mut b = BoundExpression::new();
    b.push("F0", Term::power(f0(n)?));
    b.push("F'", Term::power(f_prime(n)?));
    b.push("F''", Term::power(f_double_prime(n)?));
    for (p, i, j) in wreath_classes(m) {
        b.push(format!("F^{p}_{{{i},{j}}}"), f_p_ij(n, p, i, j)?.to_term());
    }
    Ok(b)
}

/// `log₂` bracket of `2^{n − n^{2/3} + n^{1/3}(log₂ n + 3 log₂ 0.5211) + 2 log₂ 3}`,
/// the bound used for wreath products with at least three factors.
pub fn b3_log2(n: u64, prec: u32) -> Interval {
    let nb = BigUint::from(n);
    let third = Interval::root_uint(&nb, 3, prec);
    let two_thirds = Interval::root_uint(&(&nb * &nb), 3, prec);
    let inner = ExponentExpr::log2(n) + ExponentExpr::log2_ratio(5211, 10_000).scale(&int(3));
    Interval::from_integer(n, prec)
        .sub(&two_thirds)
        .add(&third.mul(&inner.eval(prec)))
        .add(&ExponentExpr::log2(3).scale(&int(2)).eval(prec))
}

fn pairs(m: u64) -> u64 {
    m * (m - 1) / 2
}

fn pair_side(m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("need m ≥ 2, got {m}")));
    }
    Ok(())
}

/// Exponent of `G′(m) = 2^{C(m,2) − 11m/2 + 33 + 2(log₂ m)² + log₂ m}`.
pub fn g_prime(m: u64) -> Result<ExponentExpr> {
    pair_side(m)?;
    let l = ExponentExpr::log2(m);
    Ok(big(pairs(m)) - big(m).scale(&rat(11, 2))
        + ExponentExpr::integer(33)
        + (l.clone() * l.clone()).scale(&int(2))
        + l)
}

/// Exponent of `G″(m) = 2^{C(m,2) − m/2 + m·log₂(0.4) + (log₂ m)² + 2 log₂ m + 3/4}`.
pub fn g_double_prime(m: u64) -> Result<ExponentExpr> {
    pair_side(m)?;
    let l = ExponentExpr::log2(m);
    Ok(big(pairs(m)) - big(m).scale(&rat(1, 2))
        + ExponentExpr::log2_ratio(2, 5).scale(&int(m))
        + l.clone() * l.clone()
        + l.scale(&int(2))
        + ExponentExpr::ratio(3, 4))
}

/// `Σ 2^{orb(C)}` over subgroups generated by elements of type `p^i` of
/// `Sym(m)` acting on 2-subsets.
pub fn g_i_p(m: u64, p: u64, i: u64) -> Result<ScaledPower> {
    pair_side(m)?;
    check_class(p, &[i], m)?;
    let c = pairs(m) as i64;
    let (i_, p_, m_) = (i as i64, p as i64, m as i64);
    let (exponent, den) = if p == 2 {
        (
            c - i_ * m_ + i_ * i_ + i_,
            BigUint::from(2u32).pow(i as u32) * factorial(i),
        )
    } else {
        (
            c - i_ * (p_ - 1) * m_ + i_ * i_ * p_ * (p_ - 1) / 2 + i_ * (p_ - 1) / 2,
            BigUint::from(p - 1) * BigUint::from(p).pow(i as u32) * factorial(i),
        )
    };
    Ok(ScaledPower {
        coefficient: BigRational::new(falling_factorial(m, p * i).into(), den.into()),
        exponent,
    })
}

/// Pairs `(p, i)` with `i ≥ 1`, `ip < 11` and `ip ≤ m`.
pub fn pair_classes(m: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7] {
        for i in 1..=10 / p {
            if p * i <= m {
                out.push((p, i));
            }
        }
    }
    out
}

/// `G(m) = G′ + G″ + Σ G^p_i` for `m ≥ 5`.
pub fn g_total(m: u64) -> Result<BoundExpression> {
    if m < 5 {
        return Err(Error::InvalidArgument(format!("G(m) needs m ≥ 5, got {m}")));
    }
    let mut b = BoundExpression::new();
    b.push("G'", Term::power(g_prime(m)?));
    b.push("G''", Term::power(g_double_prime(m)?));
    for (p, i) in pair_classes(m) {
        b.push(format!("G^{p}_{i}"), g_i_p(m, p, i)?.to_term());
    }
    Ok(b)
}

fn certified_floor(expr: &ExponentExpr) -> Result<i64> {
    for &prec in &PRECISION_LADDER {
        if let Some(f) = expr.eval(prec).certified_floor() {
            return i64::try_from(f).map_err(|_| Error::InvalidArgument("cutoff overflow".into()));
        }
    }
    Err(Error::Undecided {
        precision: *PRECISION_LADDER.last().expect("non-empty ladder"),
    })
}

/// `⌊m − 4 log₂ m + 3⌋`.
pub fn cutoff_wreath(m: u64) -> Result<i64> {
    pair_side(m)?;
    certified_floor(&(big(m) - ExponentExpr::log2(m).scale(&int(4)) + ExponentExpr::integer(3)))
}

/// `⌊m − 2 log₂ m⌋`.
pub fn cutoff_pairs(m: u64) -> Result<i64> {
    pair_side(m)?;
    certified_floor(&(big(m) - ExponentExpr::log2(m).scale(&int(2))))
}

/// `Σ_C 2^{n/2 + fix(C)/2}` over the prime-order subgroups of a census: the
/// generic upper bound on the number of subsets fixed by a non-identity
/// element.
pub fn fixed_point_envelope(degree: usize, table: &PrimeOrderClassTable) -> BoundExpression {
    let mut b = BoundExpression::new();
    for e in &table.entries {
        let exp = ExponentExpr::constant(BigRational::new(
            BigInt::from(degree + e.fix_count),
            BigInt::from(2),
        ));
        b.push(
            format!("p={} fix={}", e.prime, e.fix_count),
            Term::new(BigRational::from_integer(e.subgroup_count.clone().into()), exp),
        );
    }
    b
}
