//! Named closed-form inequalities `lhs < 2^rhs`, certified pointwise.
//!
//! Each entry computes `log₂` brackets of both sides at a working precision.
//! [`check_inequality`] walks [`PRECISION_LADDER`] until the sign of the
//! margin `rhs − log₂ lhs` is certified.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;

use super::functions::{b3_log2, exact_sqrt, f_total, g_total};
use super::interval::Interval;
use super::numtheory::{agl_order, perfect_power, sp_order};
use super::PRECISION_LADDER;
use crate::error::{Error, Result};
use crate::perm::is_prime;

/// Which wreath-product bound stood in for the fixed-subset count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `F(n)` with `n = m²`.
    Square,
    /// `2^{n − n^{2/3} + n^{1/3}(log₂ n + 3 log₂ 0.5211) + 2 log₂ 3}`, valid
    /// for products of at least three factors.
    ThreeOrMore,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Square => "l=2",
            Branch::ThreeOrMore => "l>=3",
        }
    }
}

/// Group orders that cannot be derived from first principles here, keyed by
/// name. Supplied by the caller, usually from a data file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExternalConstants {
    values: BTreeMap<String, BigUint>,
}

impl ExternalConstants {
    pub fn new() -> ExternalConstants {
        ExternalConstants::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, value: BigUint) {
        self.values.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Result<&BigUint> {
        self.values
            .get(name)
            .ok_or_else(|| Error::MissingConstant(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BigUint)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegistryEntry {
    pub name: &'static str,
    /// What the integer parameter denotes.
    pub parameter: &'static str,
    pub statement: &'static str,
    /// Keys this entry reads from [`ExternalConstants`].
    pub external: &'static [&'static str],
}

pub const AUT_HS: &str = "Aut(HS)";
pub const AUT_G2_3: &str = "Aut(G2(3))";
pub const AUT_POMEGA7_3: &str = "Aut(POmega7(3))";

pub const REGISTRY: &[RegistryEntry] = &[
    RegistryEntry {
        name: "TW",
        parameter: "n (perfect square)",
        statement: "log60(n)^log2(log60(n)) * F(n) < 2^n",
        external: &[],
    },
    RegistryEntry {
        name: "HA-prime",
        parameter: "p (prime)",
        statement: "2^((p+1)/2) p (p-1) + 2^((p+sqrt(p)+1)/2) p^log2(p) (p-1)^2 / 4 < 2^p",
        external: &[],
    },
    RegistryEntry {
        name: "HA-general",
        parameter: "n (perfect square)",
        statement: "2^(3n/4) n^(1+log2 n) + n^(log2(n)/2) F(n) < 2^n",
        external: &[],
    },
    RegistryEntry {
        name: "PA",
        parameter: "n (perfect power)",
        statement: "log5(n)^log2(log5(n)) * F(n) < 2^n",
        external: &[],
    },
    RegistryEntry {
        name: "PA-PSL2(7)",
        parameter: "l (n = 8^l)",
        statement: "2^(3n/4) |AGL(3l,2)| 32^l + l^log2(l) F(8^l) < 2^n",
        external: &[],
    },
    RegistryEntry {
        name: "PA-decomposable",
        parameter: "n (perfect square)",
        statement: "n^(log2(n)/2) F(n) < 2^n",
        external: &[],
    },
    RegistryEntry {
        name: "AS-HS",
        parameter: "n (= 15400)",
        statement: "2^(n/2+2n/7) |Aut(HS)| + 2 G(176) < 2^n",
        external: &[AUT_HS],
    },
    RegistryEntry {
        name: "AS-G2(3)",
        parameter: "n (= 3159)",
        statement: "(|Aut(G2(3))| + 2 |Aut(POmega7(3))|) 2^(n/2+2n/7) < 2^n",
        external: &[AUT_G2_3, AUT_POMEGA7_3],
    },
    RegistryEntry {
        name: "AS-Sz",
        parameter: "k (odd, q = 2^k, n = q^2(q^2+1)/2)",
        statement: "G(q^2+1) + 2^(n/2+2n/7) |Sp(4k,2)| < 2^n",
        external: &[],
    },
    RegistryEntry {
        name: "AS-Sp4",
        parameter: "k (q = 2^k, n = (q^2(q^2-1)/2)^2)",
        statement: "2^(n/2+2n/7) 2k |Sp(4,q)| + F(n) < 2^n",
        external: &[],
    },
];

pub fn entry(name: &str) -> Result<&'static RegistryEntry> {
    REGISTRY
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownInequality(name.to_string()))
}

/// Brackets of `log₂ lhs` and of the right-hand exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sides {
    pub lhs_log2: Interval,
    pub rhs_log2: Interval,
    pub branch: Option<Branch>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityVerdict {
    pub name: String,
    pub parameter: u64,
    /// `None` when the sign of the margin stayed uncertified at every
    /// precision.
    pub holds: Option<bool>,
    /// Bracket of `rhs − log₂ lhs`.
    pub margin: Interval,
    pub precision_bits: u32,
    pub branch: Option<Branch>,
}

impl InequalityVerdict {
    pub fn certified(&self) -> Result<bool> {
        self.holds.ok_or(Error::Undecided {
            precision: self.precision_bits,
        })
    }
}

fn bad(msg: String) -> Error {
    Error::InvalidArgument(msg)
}

fn lg(x: u64, prec: u32) -> Interval {
    Interval::log2_uint(&BigUint::from(x), prec)
}

fn lg_big(x: &BigUint, prec: u32) -> Interval {
    Interval::log2_uint(x, prec)
}

fn rational(n: u64, d: u64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(x: u64, prec: u32) -> Interval {
    Interval::from_integer(x, prec)
}

/// `(log₂ log_b n)²` where `log_b n = log₂ n / log₂ b`: the exponent of
/// `L^{log₂ L}` with `L = log_b n`.
fn log_power_exponent(n: u64, base: u64, prec: u32) -> Result<Interval> {
    if n <= base {
        return Err(bad(format!("need n > {base}, got {n}")));
    }
    let l = lg(n, prec)
        .log2()
        .expect("log2 n > 0")
        .sub(&lg(base, prec).log2().expect("log2 base > 0"));
    Ok(l.square())
}

/// `log₂` of the fixed-subset bound for a wreath product of degree `n`.
pub fn wreath_bound_log2(n: u64, prec: u32) -> Result<(Interval, Branch)> {
    if let Ok(m) = exact_sqrt(n) {
        if m >= 5 {
            return Ok((f_total(n)?.log2(prec), Branch::Square));
        }
    }
    match perfect_power(n) {
        Some((_, l)) if l >= 3 => Ok((b3_log2(n, prec), Branch::ThreeOrMore)),
        _ => Err(bad(format!("{n} is not a perfect power with a usable wreath bound"))),
    }
}

fn square_f(n: u64, prec: u32) -> Result<Interval> {
    let m = exact_sqrt(n)?;
    if m < 5 {
        return Err(bad(format!("F(n) needs n ≥ 25, got {n}")));
    }
    Ok(f_total(n)?.log2(prec))
}

fn eleven_fourteenths(n: u64, prec: u32) -> Interval {
    Interval::from_rational(&(rational(11, 14) * BigRational::from_integer(n.into())), prec)
}

fn lse(terms: &[Interval]) -> Interval {
    Interval::log2_sum_exp2(terms)
}

/// Both sides of the named inequality at one precision.
pub fn sides(name: &str, param: u64, constants: &ExternalConstants, prec: u32) -> Result<Sides> {
    let e = entry(name)?;
    let mut branch = None;
    let (lhs, rhs) = match e.name {
        "TW" => {
            exact_sqrt(param)?;
            let lhs = log_power_exponent(param, 60, prec)?.add(&square_f(param, prec)?);
            branch = Some(Branch::Square);
            (lhs, int(param, prec))
        }
        "HA-prime" => {
            let p = param;
            if !is_prime(p) {
                return Err(bad(format!("{p} is not prime")));
            }
            let lp = lg(p, prec);
            let lq = lg(p - 1, prec);
            let t1 = Interval::from_rational(&rational(p + 1, 2), prec)
                .add(&lp)
                .add(&lq);
            let sqrt_p = Interval::root_uint(&BigUint::from(p), 2, prec);
            let t2 = int(p + 1, prec)
                .add(&sqrt_p)
                .scale(&rational(1, 2))
                .add(&lp.square())
                .add(&lq.scale_int(2))
                .sub(&int(2, prec));
            (lse(&[t1, t2]), int(p, prec))
        }
        "HA-general" => {
            let n = param;
            let f = square_f(n, prec)?;
            let ln = lg(n, prec);
            let t1 = Interval::from_rational(&(rational(3, 4) * BigRational::from_integer(n.into())), prec)
                .add(&ln.add(&int(1, prec)).mul(&ln));
            let t2 = ln.square().scale(&rational(1, 2)).add(&f);
            (lse(&[t1, t2]), int(n, prec))
        }
        "PA" => {
            let n = param;
            let (w, b) = wreath_bound_log2(n, prec)?;
            branch = Some(b);
            (log_power_exponent(n, 5, prec)?.add(&w), int(n, prec))
        }
        "PA-PSL2(7)" => {
            let l = param;
            if !(2..=21).contains(&l) {
                return Err(bad(format!("need 2 ≤ l ≤ 21, got {l}")));
            }
            let n = 8u64.pow(l as u32);
            let t1 = Interval::from_rational(&(rational(3, 4) * BigRational::from_integer(n.into())), prec)
                .add(&lg_big(&agl_order(3 * l as u32, 2), prec))
                .add(&int(5 * l, prec));
            let (w, b) = wreath_bound_log2(n, prec)?;
            branch = Some(b);
            let ll = lg(l, prec);
            let t2 = ll.square().add(&w);
            (lse(&[t1, t2]), int(n, prec))
        }
        "PA-decomposable" => {
            let n = param;
            let f = square_f(n, prec)?;
            let ln = lg(n, prec);
            (ln.square().scale(&rational(1, 2)).add(&f), int(n, prec))
        }
        "AS-HS" => {
            let n = param;
            if n != 15_400 {
                return Err(bad(format!("AS-HS is stated for n = 15400, got {n}")));
            }
            let aut = constants.get(AUT_HS)?;
            let t1 = eleven_fourteenths(n, prec).add(&lg_big(aut, prec));
            let t2 = g_total(176)?.log2(prec).add(&int(1, prec));
            (lse(&[t1, t2]), int(n, prec))
        }
        "AS-G2(3)" => {
            let n = param;
            if n != 3159 {
                return Err(bad(format!("AS-G2(3) is stated for n = 3159, got {n}")));
            }
            let total = constants.get(AUT_G2_3)? + constants.get(AUT_POMEGA7_3)? * 2u32;
            (eleven_fourteenths(n, prec).add(&lg_big(&total, prec)), int(n, prec))
        }
        "AS-Sz" => {
            let k = param;
            if k < 3 || k % 2 == 0 || k > 15 {
                return Err(bad(format!("need odd 3 ≤ k ≤ 15, got {k}")));
            }
            let q2 = 1u64 << (2 * k);
            let n = q2 * (q2 + 1) / 2;
            let t1 = g_total(q2 + 1)?.log2(prec);
            let t2 = eleven_fourteenths(n, prec).add(&lg_big(&sp_order(2 * k as u32, 2), prec));
            (lse(&[t1, t2]), int(n, prec))
        }
        "AS-Sp4" => {
            let k = param;
            if !(2..=8).contains(&k) {
                return Err(bad(format!("need 2 ≤ k ≤ 8, got {k}")));
            }
            let q = 1u64 << k;
            let m = q * q * (q * q - 1) / 2;
            let n = m.checked_mul(m).ok_or_else(|| bad(format!("degree overflow at k = {k}")))?;
            let aut = sp_order(2, q) * (2 * k);
            let t1 = eleven_fourteenths(n, prec).add(&lg_big(&aut, prec));
            let t2 = square_f(n, prec)?;
            branch = Some(Branch::Square);
            (lse(&[t1, t2]), int(n, prec))
        }
        _ => unreachable!("registry names are exhaustive"),
    };
    Ok(Sides {
        lhs_log2: lhs,
        rhs_log2: rhs,
        branch,
    })
}

/// Certified verdict for one parameter, escalating precision as needed.
pub fn check_inequality(
    name: &str,
    param: u64,
    constants: &ExternalConstants,
) -> Result<InequalityVerdict> {
    let mut last = None;
    for &prec in &PRECISION_LADDER {
        let s = sides(name, param, constants, prec)?;
        let margin = s.rhs_log2.sub(&s.lhs_log2);
        let holds = margin.sign().map(|o| o == core::cmp::Ordering::Greater);
        let v = InequalityVerdict {
            name: name.to_string(),
            parameter: param,
            holds,
            margin,
            precision_bits: prec,
            branch: s.branch,
        };
        if holds.is_some() {
            return Ok(v);
        }
        last = Some(v);
    }
    Ok(last.expect("non-empty ladder"))
}

/// Parameters in `lo..=hi` inside the entry's domain.
pub fn scan_parameters(name: &str, lo: u64, hi: u64) -> Result<Vec<u64>> {
    let e = entry(name)?;
    let range = lo..=hi;
    let squares = || {
        let start = lo.max(25);
        let mut m = num_integer::Roots::sqrt(&start);
        if m * m < start {
            m += 1;
        }
        let mut out = Vec::new();
        while m.checked_mul(m).is_some_and(|n| n <= hi) {
            out.push(m * m);
            m += 1;
        }
        out
    };
    Ok(match e.name {
        "TW" | "HA-general" | "PA-decomposable" => squares(),
        "HA-prime" => range.filter(|&p| is_prime(p)).collect(),
        "PA" => range.filter(|&n| perfect_power(n).is_some()).collect(),
        "PA-PSL2(7)" => range.filter(|l| (2..=21).contains(l)).collect(),
        "AS-HS" => range.filter(|&n| n == 15_400).collect(),
        "AS-G2(3)" => range.filter(|&n| n == 3159).collect(),
        "AS-Sz" => range.filter(|&k| (3..=15).contains(&k) && k % 2 == 1).collect(),
        "AS-Sp4" => range.filter(|k| (2..=8).contains(k)).collect(),
        _ => unreachable!("registry names are exhaustive"),
    })
}

/// Pointwise verdicts over a parameter list. No monotonicity is assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub name: String,
    pub verdicts: Vec<InequalityVerdict>,
}

impl ScanReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds == Some(true))
    }

    pub fn failures(&self) -> Vec<u64> {
        self.verdicts
            .iter()
            .filter(|v| v.holds == Some(false))
            .map(|v| v.parameter)
            .collect()
    }

    pub fn undecided(&self) -> Vec<u64> {
        self.verdicts
            .iter()
            .filter(|v| v.holds.is_none())
            .map(|v| v.parameter)
            .collect()
    }

    /// Smallest certified margin, in `log₂` units.
    pub fn min_margin(&self) -> Option<f64> {
        self.verdicts
            .iter()
            .map(|v| v.margin.lower_f64())
            .min_by(|a, b| a.total_cmp(b))
    }
}

pub fn scan_threshold(
    name: &str,
    params: impl IntoIterator<Item = u64>,
    constants: &ExternalConstants,
) -> Result<ScanReport> {
    entry(name)?;
    let verdicts = params
        .into_iter()
        .map(|p| check_inequality(name, p, constants))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport {
        name: name.to_string(),
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constants() -> ExternalConstants {
        let mut c = ExternalConstants::new();
        c.insert(AUT_HS, BigUint::from(88_704_000u64));
        c.insert(AUT_G2_3, BigUint::from(8_491_392u64));
        c.insert(AUT_POMEGA7_3, BigUint::from(9_170_703_360u64));
        c
    }

    fn holds(name: &str, p: u64) -> Option<bool> {
        check_inequality(name, p, &constants()).unwrap().holds
    }

    #[test]
    fn ha_prime_examples() {
        assert_eq!(holds("HA-prime", 139), Some(true));
        assert_eq!(holds("HA-prime", 5), Some(false));
        assert!(check_inequality("HA-prime", 9, &constants()).is_err());
    }

    #[test]
    fn ha_prime_matches_float_estimate() {
        for p in [5u64, 7, 31, 101, 127, 131, 137, 139, 149, 1009] {
            if !is_prime(p) {
                continue;
            }
            let x = p as f64;
            let lhs = (2f64.powf((x + 1.0) / 2.0) * x * (x - 1.0)
                + 2f64.powf((x + x.sqrt() + 1.0) / 2.0) * x.powf(x.log2()) * (x - 1.0).powi(2) / 4.0)
                .log2();
            let v = check_inequality("HA-prime", p, &constants()).unwrap();
            let m = v.margin.lower_f64();
            assert!((x - lhs - m).abs() < 1e-6, "p = {p}: {} vs {m}", x - lhs);
        }
    }

    #[test]
    fn tw_at_threshold() {
        let v = check_inequality("TW", 3600, &constants()).unwrap();
        assert_eq!(v.holds, Some(true));
        assert_eq!(v.branch, Some(Branch::Square));
        assert!(check_inequality("TW", 3601, &constants()).is_err());
    }

    #[test]
    fn pa_branches() {
        let sq = check_inequality("PA", 1296, &constants()).unwrap();
        assert_eq!(sq.branch, Some(Branch::Square));
        let cube = check_inequality("PA", 1331, &constants()).unwrap();
        assert_eq!(cube.branch, Some(Branch::ThreeOrMore));
        assert_eq!(cube.holds, Some(true));
        assert!(check_inequality("PA", 1297, &constants()).is_err());
    }

    #[test]
    fn psl27_entries() {
        assert_eq!(holds("PA-PSL2(7)", 4), Some(true));
        assert_eq!(holds("PA-PSL2(7)", 5), Some(true));
    }

    #[test]
    fn as_entries() {
        assert_eq!(holds("AS-HS", 15_400), Some(true));
        assert_eq!(holds("AS-G2(3)", 3159), Some(true));
        assert_eq!(holds("AS-Sz", 3), Some(true));
        assert_eq!(holds("AS-Sp4", 2), Some(true));
        let empty = ExternalConstants::new();
        assert_eq!(
            check_inequality("AS-HS", 15_400, &empty),
            Err(Error::MissingConstant(AUT_HS.into()))
        );
    }

    #[test]
    fn unknown_name() {
        assert_eq!(
            check_inequality("nope", 1, &constants()),
            Err(Error::UnknownInequality("nope".into()))
        );
        assert!(scan_parameters("nope", 1, 2).is_err());
    }

    #[test]
    fn scan_parameter_domains() {
        assert_eq!(scan_parameters("TW", 3600, 3900).unwrap(), [3600, 3721, 3844]);
        assert_eq!(scan_parameters("HA-prime", 130, 140).unwrap(), [131, 137, 139]);
        assert_eq!(
            scan_parameters("PA", 1290, 1400).unwrap(),
            [1296, 1331, 1369]
        );
        assert_eq!(scan_parameters("AS-Sz", 1, 9).unwrap(), [3, 5, 7, 9]);
    }

    #[test]
    fn scans_report_pointwise() {
        let r = scan_threshold("HA-prime", [5, 7, 139], &constants()).unwrap();
        assert_eq!(r.failures(), [5, 7]);
        assert!(!r.all_hold());
        assert!(r.undecided().is_empty());
    }

    #[test]
    fn registry_names_are_unique() {
        for (i, a) in REGISTRY.iter().enumerate() {
            assert!(REGISTRY[i + 1..].iter().all(|b| b.name != a.name));
        }
    }
}
