//! Permutations of `{0..n-1}` acting on the right.
//!
//! Composition is left to right: `compose(a, b)` maps `x` to `b(a(x))`, so
//! `x^(ab) = (x^a)^b`. Text I/O uses 1-indexed disjoint cycle notation such as
//! `(1,2,3)(4,5)`; the identity is written `()`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::subset::{check_domain, Subset};

/// Default cap on the domain size for [`Permutation::invariant_subsets`].
pub const DEFAULT_ENUMERATION_LIMIT: usize = 30;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

/// Full cycle decomposition together with the counting statistics used by the
/// fixed-subset bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleData {
    /// Every cycle, fixed points included, each starting at its least point.
    pub cycles: Vec<Vec<usize>>,
    pub fix_count: usize,
    pub orbit_count: usize,
    pub order: BigUint,
    /// Smallest prime dividing the order; `None` for the identity.
    pub smallest_prime: Option<u64>,
}

impl CycleData {
    /// Checks `orb(g) <= (n + (p-1) fix(g)) / p` for the smallest prime `p`
    /// dividing the order. Errors on the identity.
    pub fn orbit_bound_holds(&self) -> Result<bool> {
        let p = self.smallest_prime.ok_or(Error::IdentityElement)? as u128;
        let n = self.cycles.iter().map(Vec::len).sum::<usize>() as u128;
        Ok(self.orbit_count as u128 * p <= n + (p - 1) * self.fix_count as u128)
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Wraps an image array after checking that it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotABijection(n));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 0-indexed disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Permutation> {
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(Error::InvalidArgument(alloc::format!(
                        "point {} outside domain of size {}",
                        x + 1,
                        n
                    )));
                }
                if touched[x] {
                    return Err(Error::NotABijection(n));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-indexed cycle notation, e.g. `"(1,2,3)(4,5)"` or `"()"`.
    /// Points may be separated by commas and/or whitespace.
    pub fn parse(n: usize, text: &str) -> Result<Permutation> {
        let cycles = parse_cycles(text)?;
        let refs: Vec<&[usize]> = cycles.iter().map(|(_, c)| c.as_slice()).collect();
        for (pos, c) in &cycles {
            if let Some(&bad) = c.iter().find(|&&x| x >= n) {
                return Err(Error::Parse {
                    position: *pos,
                    message: alloc::format!("point {} exceeds degree {}", bad + 1, n),
                });
            }
        }
        Permutation::from_cycles(n, &refs).map_err(|e| match e {
            Error::NotABijection(_) => Error::Parse {
                position: 0,
                message: "cycles are not disjoint".to_string(),
            },
            other => other,
        })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Image of a single point.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// Image of a subset, `Δ^g`.
    #[inline]
    pub fn apply_subset(&self, s: Subset) -> Subset {
        let mut out = 0u64;
        let mut m = s.0;
        while m != 0 {
            let p = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= 1u64 << self.images[p];
        }
        Subset(out)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Checked left-to-right composition (`self` first, then `other`).
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DomainMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked left-to-right composition.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Conjugate `x^-1 self x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        x.inverse().then(self).then(x)
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        let mut transpositions = 0usize;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    /// Lengths of all cycles, fixed points included.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// Number of cycles including fixed points, `orb(g)`.
    pub fn orbit_count(&self) -> usize {
        self.cycle_lengths().len()
    }

    /// Number of fixed points, `fix(g)`.
    pub fn fix_count(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &x)| i == x).count()
    }

    /// If the order of `self` is a prime, returns it.
    pub fn prime_order(&self) -> Option<u64> {
        let mut p = 0usize;
        for len in self.cycle_lengths() {
            if len == 1 {
                continue;
            }
            if p == 0 {
                p = len;
            } else if len != p {
                return None;
            }
        }
        if p != 0 && is_prime(p as u64) {
            Some(p as u64)
        } else {
            None
        }
    }

    pub fn cycle_data(&self) -> CycleData {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            cycles.push(cycle);
        }
        let fix_count = cycles.iter().filter(|c| c.len() == 1).count();
        let mut order = BigUint::one();
        let mut smallest_prime: Option<u64> = None;
        for c in &cycles {
            let len = c.len() as u64;
            if len > 1 {
                order = order.lcm(&BigUint::from(len));
                let p = smallest_prime_factor(len);
                smallest_prime = Some(smallest_prime.map_or(p, |q| q.min(p)));
            }
        }
        CycleData {
            orbit_count: cycles.len(),
            fix_count,
            cycles,
            order,
            smallest_prime,
        }
    }

    /// `2^orb(g)`, the number of subsets mapped onto themselves by `g`.
    pub fn invariant_subset_count(&self) -> BigUint {
        BigUint::one() << self.orbit_count()
    }

    /// Enumerates the unions of cycles of `g` (exactly the `g`-invariant
    /// subsets) with the default domain cap.
    pub fn invariant_subsets(&self) -> Result<InvariantSubsets> {
        self.invariant_subsets_with_limit(DEFAULT_ENUMERATION_LIMIT)
    }

    pub fn invariant_subsets_with_limit(&self, limit: usize) -> Result<InvariantSubsets> {
        let n = self.degree();
        if n > limit {
            return Err(Error::LimitExceeded {
                what: "invariant subset enumeration",
                value: n,
                limit,
            });
        }
        check_domain(n)?;
        let cycle_masks = self
            .cycle_data()
            .cycles
            .iter()
            .map(|c| Subset::from_points(c.iter().copied()).0)
            .collect();
        Ok(InvariantSubsets::new(cycle_masks))
    }
}

/// Iterator over the unions of a fixed family of disjoint cycle masks.
pub struct InvariantSubsets {
    cycle_masks: Vec<u64>,
    counter: u64,
    end: u64,
}

impl InvariantSubsets {
    pub(crate) fn new(cycle_masks: Vec<u64>) -> InvariantSubsets {
        let end = 1u64 << cycle_masks.len();
        InvariantSubsets {
            cycle_masks,
            counter: 0,
            end,
        }
    }
}

impl Iterator for InvariantSubsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.counter >= self.end {
            return None;
        }
        let mut mask = 0u64;
        let mut bits = self.counter;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            mask |= self.cycle_masks[k];
        }
        self.counter += 1;
        Some(Subset(mask))
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Left-to-right product; panics on a degree mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let data = self.cycle_data();
        let mut any = false;
        for c in data.cycles.iter().filter(|c| c.len() > 1) {
            any = true;
            f.write_str("(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Parses cycle notation into 0-indexed cycles, each tagged with the byte
/// offset of its opening parenthesis.
pub fn parse_cycles(text: &str) -> Result<Vec<(usize, Vec<usize>)>> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut cycles = Vec::new();
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    loop {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i == bytes.len() {
            break;
        }
        if bytes[i] != b'(' {
            return Err(err(i, "expected '('"));
        }
        let open = i;
        i += 1;
        let mut cycle = Vec::new();
        let mut expect_number = true;
        loop {
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            if i == bytes.len() {
                return Err(err(i, "unterminated cycle"));
            }
            match bytes[i] {
                b')' => {
                    if !cycle.is_empty() && expect_number {
                        return Err(err(i, "trailing comma"));
                    }
                    i += 1;
                    break;
                }
                b',' => {
                    if expect_number {
                        return Err(err(i, "unexpected ','"));
                    }
                    expect_number = true;
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let value: usize = text[start..i]
                        .parse()
                        .map_err(|_| err(start, "point label out of range"))?;
                    if value == 0 {
                        return Err(err(start, "points are 1-indexed"));
                    }
                    cycle.push(value - 1);
                    expect_number = false;
                }
                _ => return Err(err(i, "unexpected character")),
            }
        }
        let mut sorted = cycle.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(err(open, "repeated point in cycle"));
        }
        if cycle.len() > 1 {
            cycles.push((open, cycle));
        }
    }
    Ok(cycles)
}

/// Largest point mentioned in a cycle string (1-indexed), or 0 for `()`.
pub fn max_label(text: &str) -> Result<usize> {
    Ok(parse_cycles(text)?
        .iter()
        .flat_map(|(_, c)| c.iter().map(|x| x + 1))
        .max()
        .unwrap_or(0))
}

pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    debug_assert!(n > 1);
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// Formats a list of permutations, one per line.
pub fn format_all(perms: &[Permutation]) -> String {
    let mut out = String::new();
    for p in perms {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    #[test]
    fn compose_identity_and_involution() {
        let g = perm(5, "(1,3,5)(2,4)");
        let id = Permutation::identity(5);
        assert_eq!(id.compose(&g).unwrap(), g);
        let t = perm(4, "(1,2)");
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn compose_is_left_to_right() {
        // 0->1->0, 1->2->2, 2->0->1: golden value evaluated point by point.
        let a = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.images(), &[0, 2, 1]);
        assert_eq!((&a * &b), ab);
    }

    #[test]
    fn compose_rejects_mismatch() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert_eq!(
            a.compose(&b),
            Err(Error::DomainMismatch {
                expected: 3,
                found: 4
            })
        );
    }

    #[test]
    fn cycle_data_examples() {
        let id = Permutation::identity(6).cycle_data();
        assert_eq!((id.fix_count, id.orbit_count), (6, 6));
        assert_eq!(id.smallest_prime, None);
        assert!(matches!(id.orbit_bound_holds(), Err(Error::IdentityElement)));

        let g = perm(6, "(1,2,3)(4,5)").cycle_data();
        assert_eq!((g.fix_count, g.orbit_count), (1, 3));
        assert_eq!(g.order, BigUint::from(6u32));
        assert_eq!(g.smallest_prime, Some(2));

        // Order 2 with two fixed points on 6 points: (6 + 1*2)/2 = 4 is attained.
        let h = perm(6, "(1,2)(3,4)").cycle_data();
        assert_eq!(h.fix_count, 2);
        assert_eq!(h.orbit_count, 4);
        assert!(h.orbit_bound_holds().unwrap());
    }

    #[test]
    fn invariant_subsets_examples() {
        assert_eq!(
            Permutation::identity(5).invariant_subset_count(),
            BigUint::from(32u32)
        );
        assert_eq!(
            perm(6, "(1,2,3)(4,5)").invariant_subset_count(),
            BigUint::from(8u32)
        );
        assert_eq!(Permutation::identity(3).invariant_subsets().unwrap().count(), 8);
        let swap: Vec<Subset> = perm(2, "(1,2)").invariant_subsets().unwrap().collect();
        assert_eq!(swap, [Subset(0), Subset(0b11)]);
        assert!(Permutation::identity(31).invariant_subsets().is_err());
    }

    #[test]
    fn parse_and_display() {
        let g = perm(6, " ( 1 , 2,3 ) (4 5)");
        assert_eq!(g.to_string(), "(1,2,3)(4,5)");
        assert_eq!(perm(4, "()").to_string(), "()");
        assert_eq!(perm(4, "(2)").to_string(), "()");
        match Permutation::parse(5, "(1,2)(3,x)") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 8),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Permutation::parse(3, "(1,4)").is_err());
        assert!(Permutation::parse(3, "(1,2)(2,3)").is_err());
        assert!(Permutation::parse(3, "(0,1)").is_err());
        assert!(Permutation::parse(3, "(1,2").is_err());
        assert!(Permutation::parse(3, "(1,,2)").is_err());
    }

    #[test]
    fn order_matches_repeated_composition() {
        let g = perm(12, "(1,2,3,4,5)(6,7,8)(9,10)");
        assert_eq!(g.cycle_data().order, BigUint::from(30u32));
        assert!(g.pow(30).is_identity());
        assert!(!g.pow(15).is_identity());
        assert_eq!(g.prime_order(), None);
        assert_eq!(perm(7, "(1,2,3)(4,5,6)").prime_order(), Some(3));
    }

    fn arb_perm(max_n: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_n)
            .prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_and_associativity(a in arb_perm(9), seed in any::<u64>()) {
            let n = a.degree();
            let b = a.pow(seed % 7 + 1);
            let c = a.inverse().pow(seed % 3);
            prop_assert!(a.then(&a.inverse()).is_identity());
            prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
            prop_assert_eq!(Permutation::parse(n, &a.to_string()).unwrap(), a);
        }

        #[test]
        fn cycle_data_partitions_domain(a in arb_perm(14)) {
            let data = a.cycle_data();
            let mut all: Vec<usize> = data.cycles.iter().flatten().copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..a.degree()).collect::<Vec<_>>());
            let moved: usize = data.cycles.iter().filter(|c| c.len() > 1).map(Vec::len).sum();
            prop_assert_eq!(data.fix_count + moved, a.degree());
            let order: u64 = data.order.clone().try_into().unwrap();
            if order <= 60 {
                prop_assert!(a.pow(order).is_identity());
                for d in 1..order {
                    prop_assert!(!a.pow(d).is_identity());
                }
            }
            if !a.is_identity() {
                prop_assert!(data.orbit_bound_holds().unwrap());
            }
        }
    }
}
