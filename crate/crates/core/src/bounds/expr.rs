//! Symbolic exponents and sums of scaled powers of two.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{BinaryFloat, Exp2Table, Interval};
use crate::perm::smallest_prime_factor;

/// `constant + Σ coeff · Π log₂(q)` over monomials in logarithms of odd
/// primes.
///
/// Arguments are factored on construction, so `log₂(20)` becomes
/// `2 + log₂(5)`. Two expressions are equal iff their normalized monomial
/// tables are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentExpr {
    constant: BigRational,
    /// Monomial (sorted odd primes, with repetition) to non-zero coefficient.
    terms: BTreeMap<Vec<u64>, BigRational>,
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    while n > 1 {
        let p = smallest_prime_factor(n);
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        out.push((p, e));
    }
    out
}

impl ExponentExpr {
    pub fn constant(c: BigRational) -> ExponentExpr {
        ExponentExpr {
            constant: c,
            terms: BTreeMap::new(),
        }
    }

    pub fn integer(c: i64) -> ExponentExpr {
        ExponentExpr::constant(BigRational::from_integer(c.into()))
    }

    pub fn ratio(num: i64, den: i64) -> ExponentExpr {
        ExponentExpr::constant(BigRational::new(num.into(), den.into()))
    }

    /// `log₂(arg)`.
    ///
    /// # Panics
    /// Panics if `arg` is zero.
    pub fn log2(arg: u64) -> ExponentExpr {
        assert!(arg > 0, "log2 of zero");
        let mut e = ExponentExpr::integer(0);
        for (p, k) in factor(arg) {
            let c = BigRational::from_integer(k.into());
            if p == 2 {
                e.constant += c;
            } else {
                e.insert(alloc::vec![p], c);
            }
        }
        e
    }

    /// `log₂(num / den)`.
    pub fn log2_ratio(num: u64, den: u64) -> ExponentExpr {
        ExponentExpr::log2(num) - ExponentExpr::log2(den)
    }

    fn insert(&mut self, key: Vec<u64>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn constant_part(&self) -> &BigRational {
        &self.constant
    }

    /// Monomials as (odd primes, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&[u64], &BigRational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, r: &BigRational) -> ExponentExpr {
        if r.is_zero() {
            return ExponentExpr::integer(0);
        }
        ExponentExpr {
            constant: &self.constant * r,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * r)).collect(),
        }
    }

    pub fn eval(&self, prec: u32) -> Interval {
        let mut logs: BTreeMap<u64, Interval> = BTreeMap::new();
        let mut acc = Interval::from_rational(&self.constant, prec);
        for (mono, c) in &self.terms {
            let mut m = Interval::from_integer(1, prec);
            for &q in mono {
                let l = logs
                    .entry(q)
                    .or_insert_with(|| Interval::log2_uint(&BigUint::from(q), prec));
                m = m.mul(l);
            }
            acc = acc.add(&m.scale(c));
        }
        acc
    }

    /// Exact `2^self` when every monomial is linear with an integer
    /// coefficient and the constant is an integer.
    pub fn exact_power(&self) -> Option<BigRational> {
        if !self.constant.is_integer() {
            return None;
        }
        let mut v = pow2(&self.constant.to_integer())?;
        for (mono, c) in &self.terms {
            if mono.len() != 1 || !c.is_integer() {
                return None;
            }
            let e: i64 = i64::try_from(c.to_integer()).ok()?;
            let q = BigRational::from_integer(mono[0].into());
            let e32 = i32::try_from(e).ok()?;
            v *= num_traits::pow::Pow::pow(&q, e32);
        }
        Some(v)
    }
}

fn pow2(e: &BigInt) -> Option<BigRational> {
    let e = i64::try_from(e.clone()).ok()?;
    Some(if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as u64)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as u64)
    })
}

impl Add for ExponentExpr {
    type Output = ExponentExpr;
    fn add(mut self, rhs: ExponentExpr) -> ExponentExpr {
        self.constant += rhs.constant;
        for (k, v) in rhs.terms {
            self.insert(k, v);
        }
        self
    }
}

impl Neg for ExponentExpr {
    type Output = ExponentExpr;
    fn neg(self) -> ExponentExpr {
        self.scale(&-BigRational::one())
    }
}

impl Sub for ExponentExpr {
    type Output = ExponentExpr;
    fn sub(self, rhs: ExponentExpr) -> ExponentExpr {
        self + (-rhs)
    }
}

impl Mul for ExponentExpr {
    type Output = ExponentExpr;
    fn mul(self, rhs: ExponentExpr) -> ExponentExpr {
        let mut out = ExponentExpr::constant(&self.constant * &rhs.constant);
        for (k, v) in &rhs.terms {
            out.insert(k.clone(), v * &self.constant);
        }
        for (k, v) in &self.terms {
            out.insert(k.clone(), v * &rhs.constant);
            for (k2, v2) in &rhs.terms {
                let mut key = k.clone();
                key.extend_from_slice(k2);
                key.sort_unstable();
                out.insert(key, v * v2);
            }
        }
        out
    }
}

impl fmt::Display for ExponentExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (mono, c) in &self.terms {
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, " {} {}", sign, c.abs())?;
            for q in mono {
                write!(f, "*log2({})", q)?;
            }
        }
        Ok(())
    }
}

/// `coefficient · 2^exponent` with a positive rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coefficient: BigRational,
    pub exponent: ExponentExpr,
}

impl Term {
    /// # Panics
    /// Panics unless `coefficient > 0`.
    pub fn new(coefficient: BigRational, exponent: ExponentExpr) -> Term {
        assert!(coefficient.is_positive(), "term coefficients are positive");
        Term {
            coefficient,
            exponent,
        }
    }

    pub fn power(exponent: ExponentExpr) -> Term {
        Term::new(BigRational::one(), exponent)
    }

    pub fn log2(&self, prec: u32) -> Interval {
        let e = self.exponent.eval(prec);
        if self.coefficient.is_one() {
            e
        } else {
            e.add(&Interval::log2_rational(&self.coefficient, prec))
        }
    }

    pub fn exact_value(&self) -> Option<BigRational> {
        Some(&self.coefficient * self.exponent.exact_power()?)
    }
}

/// An exact rational times an integral power of two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledPower {
    pub coefficient: BigRational,
    pub exponent: i64,
}

impl ScaledPower {
    pub fn value(&self) -> BigRational {
        &self.coefficient * pow2(&BigInt::from(self.exponent)).expect("i64 exponent")
    }

    pub fn to_term(&self) -> Term {
        Term::new(self.coefficient.clone(), ExponentExpr::integer(self.exponent))
    }
}

/// A finite sum of [`Term`]s, labelled for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BoundExpression {
    terms: Vec<(String, Term)>,
}

impl BoundExpression {
    pub fn new() -> BoundExpression {
        BoundExpression::default()
    }

    pub fn push(&mut self, label: impl Into<String>, term: Term) {
        self.terms.push((label.into(), term));
    }

    pub fn extend(&mut self, other: BoundExpression) {
        self.terms.extend(other.terms);
    }

    pub fn terms(&self) -> &[(String, Term)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `log₂` of the sum.
    ///
    /// # Panics
    /// Panics on an empty expression.
    pub fn log2(&self, prec: u32) -> Interval {
        let logs: Vec<Interval> = self.terms.iter().map(|(_, t)| t.log2(prec)).collect();
        Interval::log2_sum_exp2(&logs)
    }

    pub fn evaluate(&self, prec: u32) -> BoundValue {
        BoundValue::from_log2(self.log2(prec))
    }

    pub fn exact_value(&self) -> Option<BigRational> {
        self.terms
            .iter()
            .map(|(_, t)| t.exact_value())
            .try_fold(BigRational::zero(), |acc, v| Some(acc + v?))
    }
}

/// A certified bracket `lower ≤ value ≤ upper` of a positive quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundValue {
    pub lower: BinaryFloat,
    pub upper: BinaryFloat,
    /// Bracket of `log₂ value`.
    pub log2: Interval,
    pub precision_bits: u32,
}

impl BoundValue {
    pub fn from_log2(log2: Interval) -> BoundValue {
        let prec = log2.precision();
        let t = Exp2Table::new(prec);
        BoundValue {
            lower: t.float(log2.lo_raw(), false),
            upper: t.float(log2.hi_raw(), true),
            log2,
            precision_bits: prec,
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lower.to_rational() <= *x && *x <= self.upper.to_rational()
    }

    /// True iff `other`'s bracket lies inside this one.
    pub fn encloses(&self, other: &BoundValue) -> bool {
        self.lower.to_rational() <= other.lower.to_rational()
            && other.upper.to_rational() <= self.upper.to_rational()
    }
}
