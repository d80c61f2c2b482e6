//! Closed intervals of dyadic rationals with outward rounding.
//!
//! An [`Interval`] at precision `p` stores two integers `lo ≤ hi` and denotes
//! `[lo / 2^p, hi / 2^p]`. Every operation rounds its lower end down and its
//! upper end up, so a computed interval always contains the exact result.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Extra bits carried by internal mantissas beyond the target precision.
const GUARD_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn shr_floor(x: &BigInt, k: u32) -> BigInt {
    if x.sign() == Sign::Minus {
        -shr_ceil_nonneg(&(-x), k)
    } else {
        x >> k
    }
}

fn shr_ceil(x: &BigInt, k: u32) -> BigInt {
    -shr_floor(&(-x), k)
}

fn shr_ceil_nonneg(x: &BigInt, k: u32) -> BigInt {
    let q: BigInt = x >> k;
    if (&q << k) == *x {
        q
    } else {
        q + 1
    }
}

fn shl_signed(x: &BigInt, shift: i64, up: bool) -> BigInt {
    if shift >= 0 {
        x << shift as u64
    } else if up {
        shr_ceil(x, (-shift) as u32)
    } else {
        shr_floor(x, (-shift) as u32)
    }
}

impl Interval {
    pub fn new(lo: BigInt, hi: BigInt, prec: u32) -> Interval {
        assert!(lo <= hi, "interval ends out of order");
        Interval { lo, hi, prec }
    }

    pub fn point(x: BigInt, prec: u32) -> Interval {
        Interval {
            lo: x.clone(),
            hi: x,
            prec,
        }
    }

    pub fn zero(prec: u32) -> Interval {
        Interval::point(BigInt::zero(), prec)
    }

    pub fn from_integer(x: impl Into<BigInt>, prec: u32) -> Interval {
        Interval::point(x.into() << prec, prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Interval {
        let scaled = r.numer() << prec;
        Interval {
            lo: scaled.div_floor(r.denom()),
            hi: Integer::div_ceil(&scaled, r.denom()),
            prec,
        }
    }

    #[inline]
    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Raw lower end, scaled by `2^precision`.
    pub fn lo_raw(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi_raw(&self) -> &BigInt {
        &self.hi
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.prec)
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.prec)
    }

    pub fn width(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, BigInt::one() << self.prec)
    }

    pub fn lower_f64(&self) -> f64 {
        ratio_to_f64(&self.lo, self.prec)
    }

    pub fn upper_f64(&self) -> f64 {
        ratio_to_f64(&self.hi, self.prec)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lower() <= *x && *x <= self.upper()
    }

    /// True iff `other ⊆ self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Certified sign: `Some` only when zero is not strictly inside.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// `⌊x⌋` when it is the same for every point of the interval.
    pub fn certified_floor(&self) -> Option<BigInt> {
        let a = shr_floor(&self.lo, self.prec);
        let b = shr_floor(&self.hi, self.prec);
        (a == b).then_some(a)
    }

    fn check(&self, other: &Interval) {
        assert_eq!(self.prec, other.prec, "interval precisions differ");
    }

    pub fn add(&self, other: &Interval) -> Interval {
        self.check(other);
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.check(other);
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        self.check(other);
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let min = products.iter().min().expect("four products");
        let max = products.iter().max().expect("four products");
        Interval {
            lo: shr_floor(min, self.prec),
            hi: shr_ceil(max, self.prec),
            prec: self.prec,
        }
    }

    pub fn square(&self) -> Interval {
        if self.lo.is_negative() && self.hi.is_positive() {
            let m = self.lo.abs().max(self.hi.abs());
            return Interval {
                lo: BigInt::zero(),
                hi: shr_ceil(&(&m * &m), self.prec),
                prec: self.prec,
            };
        }
        self.mul(self)
    }

    pub fn scale(&self, r: &BigRational) -> Interval {
        let (a, b) = (&self.lo * r.numer(), &self.hi * r.numer());
        let (a, b) = if r.is_negative() { (b, a) } else { (a, b) };
        Interval {
            lo: a.div_floor(r.denom()),
            hi: Integer::div_ceil(&b, r.denom()),
            prec: self.prec,
        }
    }

    pub fn scale_int(&self, k: i64) -> Interval {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn add_rational(&self, r: &BigRational) -> Interval {
        self.add(&Interval::from_rational(r, self.prec))
    }

    pub fn max(&self, other: &Interval) -> Interval {
        self.check(other);
        Interval {
            lo: (&self.lo).max(&other.lo).clone(),
            hi: (&self.hi).max(&other.hi).clone(),
            prec: self.prec,
        }
    }

    /// Intersection, or `None` when the intervals are disjoint.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        self.check(other);
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval {
            lo,
            hi,
            prec: self.prec,
        })
    }

    /// `log₂ x` for an integer `x ≥ 1`.
    ///
    /// # Panics
    /// Panics if `x` is zero.
    pub fn log2_uint(x: &BigUint, prec: u32) -> Interval {
        assert!(!x.is_zero(), "log2 of zero");
        let k = x.bits() - 1;
        let int_part = BigInt::from(k) << prec;
        if x.count_ones() == 1 {
            return Interval::point(int_part, prec);
        }
        let w = prec + GUARD_BITS;
        let x = BigInt::from(x.clone());
        // Mantissas y·2^w with y ∈ [1, 2); the floor chain never drops below
        // 2^w and the ceiling chain never reaches 2^(w+1).
        let (mut ylo, mut yhi) = if k as u32 >= w {
            let s = (k as u32) - w;
            (shr_floor(&x, s), shr_ceil(&x, s))
        } else {
            let y = &x << (w - k as u32);
            (y.clone(), y)
        };
        let two = BigInt::one() << (w + 1);
        let mut blo = BigInt::zero();
        let mut bhi = BigInt::zero();
        for _ in 0..prec {
            ylo = shr_floor(&(&ylo * &ylo), w);
            yhi = shr_ceil(&(&yhi * &yhi), w);
            blo <<= 1;
            bhi <<= 1;
            if ylo >= two {
                blo += 1;
                ylo = shr_floor(&ylo, 1);
            }
            if yhi >= two {
                bhi += 1;
                yhi = shr_ceil(&yhi, 1);
            }
        }
        Interval {
            lo: &int_part + blo,
            hi: int_part + bhi + 1,
            prec,
        }
    }

    /// `log₂ r` for a positive rational.
    ///
    /// # Panics
    /// Panics unless `r > 0`.
    pub fn log2_rational(r: &BigRational, prec: u32) -> Interval {
        assert!(r.is_positive(), "log2 of a non-positive number");
        let num = Interval::log2_uint(&r.numer().magnitude().clone(), prec);
        if r.denom().is_one() {
            return num;
        }
        num.sub(&Interval::log2_uint(r.denom().magnitude(), prec))
    }

    /// `log₂` of every point, or `None` unless the interval is positive.
    pub fn log2(&self) -> Option<Interval> {
        if !self.lo.is_positive() {
            return None;
        }
        let shift = BigInt::from(self.prec) << self.prec;
        let lo = Interval::log2_uint(self.lo.magnitude(), self.prec).lo - &shift;
        let hi = Interval::log2_uint(self.hi.magnitude(), self.prec).hi - shift;
        Some(Interval {
            lo,
            hi,
            prec: self.prec,
        })
    }

    /// `x^(1/k)` for an integer `x`.
    pub fn root_uint(x: &BigUint, k: u32, prec: u32) -> Interval {
        assert!(k >= 1);
        let scaled = x << (k as u64 * prec as u64);
        let r = scaled.nth_root(k);
        let exact = r.pow(k) == scaled;
        let lo = BigInt::from(r);
        let hi = if exact { lo.clone() } else { &lo + 1 };
        Interval { lo, hi, prec }
    }

    /// `2^x` for every point `x`.
    pub fn exp2(&self) -> Interval {
        let table = Exp2Table::new(self.prec);
        Interval {
            lo: table.fixed(&self.lo, false),
            hi: table.fixed(&self.hi, true),
            prec: self.prec,
        }
    }

    /// `log₂ Σ 2^{x_i}`.
    ///
    /// # Panics
    /// Panics if `terms` is empty.
    pub fn log2_sum_exp2(terms: &[Interval]) -> Interval {
        let prec = terms.first().expect("at least one term").prec;
        let table = Exp2Table::new(prec);
        let top_hi = terms.iter().map(|t| &t.hi).max().expect("non-empty").clone();
        let top_lo = terms.iter().map(|t| &t.lo).max().expect("non-empty").clone();
        let mut s_hi = BigInt::zero();
        let mut s_lo = BigInt::zero();
        for t in terms {
            assert_eq!(t.prec, prec, "interval precisions differ");
            s_hi += table.fixed(&(&t.hi - &top_hi), true);
            s_lo += table.fixed(&(&t.lo - &top_lo), false);
        }
        // s_lo ≥ 2^prec because the largest lower end contributes exactly 1.
        let shift = BigInt::from(prec) << prec;
        let up = Interval::log2_uint(s_hi.magnitude(), prec).hi - &shift;
        let down = Interval::log2_uint(s_lo.magnitude(), prec).lo - shift;
        Interval {
            lo: top_lo + down,
            hi: top_hi + up,
            prec,
        }
    }
}

fn ratio_to_f64(x: &BigInt, prec: u32) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        let v = x.to_f64().unwrap_or(f64::NAN);
        let mut scale = 1.0f64;
        for _ in 0..prec {
            scale *= 0.5;
        }
        return v * scale;
    }
    let drop = bits - 64;
    let head = (x >> drop).to_f64().unwrap_or(f64::NAN);
    let mut v = head;
    let e = drop as i64 - prec as i64;
    let (mut e, factor) = if e >= 0 { (e, 2.0) } else { (-e, 0.5) };
    while e > 0 {
        v *= factor;
        e -= 1;
    }
    v
}

/// A dyadic number `mantissa · 2^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryFloat {
    pub mantissa: BigUint,
    pub exponent: i64,
}

impl BinaryFloat {
    pub fn to_rational(&self) -> BigRational {
        let m = BigInt::from(self.mantissa.clone());
        if self.exponent >= 0 {
            BigRational::from_integer(m << self.exponent as u64)
        } else {
            BigRational::new(m, BigInt::one() << (-self.exponent) as u64)
        }
    }
}

impl fmt::Display for BinaryFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exponent)
    }
}

/// Dyadic approximations of `2^(2^-i)` for `i = 1..=prec`, rounded both ways.
pub(crate) struct Exp2Table {
    prec: u32,
    w: u32,
    down: Vec<BigInt>,
    up: Vec<BigInt>,
}

impl Exp2Table {
    pub(crate) fn new(prec: u32) -> Exp2Table {
        let w = prec + GUARD_BITS;
        let mut down = Vec::with_capacity(prec as usize);
        let mut up = Vec::with_capacity(prec as usize);
        let mut d = BigInt::from(2) << w;
        let mut u = d.clone();
        for _ in 0..prec {
            d = (&d << w).sqrt();
            let su = (&u << w).sqrt();
            u = if &su * &su == (&u << w) { su } else { su + 1 };
            down.push(d.clone());
            up.push(u.clone());
        }
        Exp2Table { prec, w, down, up }
    }

    /// `2^x` as `(mantissa, exponent)` with the mantissa carrying `w` bits.
    pub(crate) fn parts(&self, x: &BigInt, up: bool) -> (BigInt, i64) {
        let k = shr_floor(x, self.prec);
        let f = x - (&k << self.prec);
        let mut acc = BigInt::one() << self.w;
        let table = if up { &self.up } else { &self.down };
        for (i, r) in table.iter().enumerate() {
            if f.bit(u64::from(self.prec) - 1 - i as u64) {
                let prod = &acc * r;
                acc = if up {
                    shr_ceil(&prod, self.w)
                } else {
                    shr_floor(&prod, self.w)
                };
            }
        }
        let k = k.to_i64().expect("exponent fits in i64");
        (acc, k - i64::from(self.w))
    }

    /// `2^x` scaled by `2^prec`, rounded down or up.
    pub(crate) fn fixed(&self, x: &BigInt, up: bool) -> BigInt {
        let k = shr_floor(x, self.prec);
        if k < BigInt::from(-(i64::from(self.w) + 2)) {
            return if up { BigInt::one() } else { BigInt::zero() };
        }
        let (m, e) = self.parts(x, up);
        shl_signed(&m, e + i64::from(self.prec), up)
    }

    pub(crate) fn float(&self, x: &BigInt, up: bool) -> BinaryFloat {
        let (m, e) = self.parts(x, up);
        BinaryFloat {
            mantissa: m.magnitude().clone(),
            exponent: e,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.9}, {:.9}]", self.lower_f64(), self.upper_f64())
    }
}
