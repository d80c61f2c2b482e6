//! Construction recipes producing generating permutations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::Gf;
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::hypergraph::Hypergraph;
use crate::perm::Permutation;
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProjectiveKind {
    /// `PSL_d(q)`.
    Special,
    /// `PGL_d(q)`.
    General,
    /// `PΣL_d(q)`: `PSL` extended by the Frobenius map.
    SemilinearSpecial,
    /// `PΓL_d(q)`.
    Semilinear,
    /// `PSL_2(q)` extended by Frobenius composed with a non-square diagonal
    /// scaling; for `q = 9` this is `M10`.
    Twisted,
}

impl ProjectiveKind {
    fn as_str(self) -> &'static str {
        match self {
            ProjectiveKind::Special => "psl",
            ProjectiveKind::General => "pgl",
            ProjectiveKind::SemilinearSpecial => "psigmal",
            ProjectiveKind::Semilinear => "pgammal",
            ProjectiveKind::Twisted => "twisted",
        }
    }

    fn parse(s: &str) -> Option<ProjectiveKind> {
        Some(match s {
            "psl" => ProjectiveKind::Special,
            "pgl" => ProjectiveKind::General,
            "psigmal" => ProjectiveKind::SemilinearSpecial,
            "pgammal" => ProjectiveKind::Semilinear,
            "twisted" => ProjectiveKind::Twisted,
            _ => return None,
        })
    }
}

/// A construction of a permutation group from standard data.
///
/// The textual form (see [`Recipe::parse`] and `Display`) is a kind keyword
/// followed by `key=value` tokens, e.g. `projective d=2 q=9 kind=pgl`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Recipe {
    Cyclic { n: usize },
    Dihedral { n: usize },
    Symmetric { n: usize },
    Alternating { n: usize },
    /// `x ↦ a·x^σ + b` on `GF(q)` with `a` in the subgroup of order
    /// `multiplier_order` of `GF(q)^*`, and `σ` a power of Frobenius when
    /// `frobenius` is set.
    AffineLine {
        q: u64,
        multiplier_order: u64,
        frobenius: bool,
    },
    /// Translations of `F_p^d` together with the given linear maps
    /// (row-major `d×d` matrices acting on row vectors).
    Affine {
        p: u64,
        d: usize,
        linear: Vec<Vec<u64>>,
    },
    /// Action on the points of `PG(d−1, q)`.
    Projective { d: usize, q: u64, kind: ProjectiveKind },
    /// `Sym(m) ≀ Sym(l)` in product action on `m^l` points.
    ProductAction { m: usize, l: usize },
    /// `Sym(m)` or `Alt(m)` on the 2-subsets of an `m`-set.
    Pairs { m: usize, alternating: bool },
    /// Full automorphism group of the hypergraph with the given
    /// 0-indexed blocks.
    Design { n: usize, blocks: Vec<Vec<usize>> },
    /// Explicit 1-indexed cycle strings.
    Explicit { n: usize, generators: Vec<String> },
}

impl Recipe {
    pub fn degree(&self) -> Result<usize> {
        Ok(match self {
            Recipe::Cyclic { n }
            | Recipe::Dihedral { n }
            | Recipe::Symmetric { n }
            | Recipe::Alternating { n }
            | Recipe::Design { n, .. }
            | Recipe::Explicit { n, .. } => *n,
            Recipe::AffineLine { q, .. } => *q as usize,
            Recipe::Affine { p, d, .. } => checked_pow(*p as usize, *d)?,
            Recipe::Projective { d, q, .. } => {
                let q = *q as usize;
                (checked_pow(q, *d)? - 1) / (q - 1)
            }
            Recipe::ProductAction { m, l } => checked_pow(*m, *l)?,
            Recipe::Pairs { m, .. } => m * m.saturating_sub(1) / 2,
        })
    }

    /// Generating permutations of the described group.
    pub fn synthesize(&self) -> Result<Vec<Permutation>> {
        match self {
            Recipe::Cyclic { n } => Ok(PermutationGroup::cyclic(*n)?.generators().to_vec()),
            Recipe::Dihedral { n } => dihedral(*n),
            Recipe::Symmetric { n } => Ok(PermutationGroup::symmetric(*n)?.generators().to_vec()),
            Recipe::Alternating { n } => {
                Ok(PermutationGroup::alternating(*n)?.generators().to_vec())
            }
            Recipe::AffineLine {
                q,
                multiplier_order,
                frobenius,
            } => affine_line(*q, *multiplier_order, *frobenius),
            Recipe::Affine { p, d, linear } => affine(*p, *d, linear),
            Recipe::Projective { d, q, kind } => projective(*d, *q, *kind),
            Recipe::ProductAction { m, l } => product_action(*m, *l),
            Recipe::Pairs { m, alternating } => pairs(*m, *alternating),
            Recipe::Design { n, blocks } => design(*n, blocks),
            Recipe::Explicit { n, generators } => generators
                .iter()
                .map(|g| Permutation::parse(*n, g))
                .collect(),
        }
    }

    /// Parses the textual form written by `Display`.
    pub fn parse(text: &str) -> Result<Recipe> {
        let mut words = text.split_whitespace();
        let kind = words.next().ok_or_else(|| bad("empty recipe"))?;
        let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| bad(&format!("expected key=value, got {w:?}")))?;
            if kv.insert(k, v).is_some() {
                return Err(bad(&format!("repeated key {k:?}")));
            }
        }
        let mut take = |key: &str| -> Result<&str> {
            kv.remove(key)
                .ok_or_else(|| bad(&format!("{kind}: missing key {key:?}")))
        };
        let recipe = match kind {
            "cyclic" => Recipe::Cyclic { n: num(take("n")?)? },
            "dihedral" => Recipe::Dihedral { n: num(take("n")?)? },
            "symmetric" => Recipe::Symmetric { n: num(take("n")?)? },
            "alternating" => Recipe::Alternating { n: num(take("n")?)? },
            "affine-line" => Recipe::AffineLine {
                q: num(take("q")?)?,
                multiplier_order: num(take("mult")?)?,
                frobenius: flag(take("frobenius")?)?,
            },
            "affine" => Recipe::Affine {
                p: num(take("p")?)?,
                d: num(take("d")?)?,
                linear: list_of_lists(take("linear")?)?,
            },
            "projective" => Recipe::Projective {
                d: num(take("d")?)?,
                q: num(take("q")?)?,
                kind: ProjectiveKind::parse(take("kind")?)
                    .ok_or_else(|| bad("unknown projective kind"))?,
            },
            "product" => Recipe::ProductAction {
                m: num(take("m")?)?,
                l: num(take("l")?)?,
            },
            "pairs" => Recipe::Pairs {
                m: num(take("m")?)?,
                alternating: flag(take("alternating")?)?,
            },
            "design" => Recipe::Design {
                n: num(take("n")?)?,
                blocks: list_of_lists(take("blocks")?)?,
            },
            "explicit" => Recipe::Explicit {
                n: num(take("n")?)?,
                generators: take("gens")?
                    .split(';')
                    .filter(|s| !s.is_empty())
                    .map(ToString::to_string)
                    .collect(),
            },
            other => return Err(bad(&format!("unknown recipe kind {other:?}"))),
        };
        if let Some(k) = kv.keys().next() {
            return Err(bad(&format!("{kind}: unexpected key {k:?}")));
        }
        Ok(recipe)
    }
}

fn join_lists<T: fmt::Display>(lists: &[Vec<T>]) -> String {
    lists
        .iter()
        .map(|l| l.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("|")
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Cyclic { n } => write!(f, "cyclic n={n}"),
            Recipe::Dihedral { n } => write!(f, "dihedral n={n}"),
            Recipe::Symmetric { n } => write!(f, "symmetric n={n}"),
            Recipe::Alternating { n } => write!(f, "alternating n={n}"),
            Recipe::AffineLine {
                q,
                multiplier_order,
                frobenius,
            } => write!(f, "affine-line q={q} mult={multiplier_order} frobenius={frobenius}"),
            Recipe::Affine { p, d, linear } => {
                write!(f, "affine p={p} d={d} linear={}", join_lists(linear))
            }
            Recipe::Projective { d, q, kind } => {
                write!(f, "projective d={d} q={q} kind={}", kind.as_str())
            }
            Recipe::ProductAction { m, l } => write!(f, "product m={m} l={l}"),
            Recipe::Pairs { m, alternating } => write!(f, "pairs m={m} alternating={alternating}"),
            Recipe::Design { n, blocks } => write!(f, "design n={n} blocks={}", join_lists(blocks)),
            Recipe::Explicit { n, generators } => write!(f, "explicit n={n} gens={}", generators.join(";")),
        }
    }
}

fn bad(msg: &str) -> Error {
    Error::InvalidArgument(format!("recipe: {msg}"))
}

fn num<T: core::str::FromStr>(s: &str) -> Result<T> {
    s.parse().map_err(|_| bad(&format!("not a number: {s:?}")))
}

fn flag(s: &str) -> Result<bool> {
    s.parse().map_err(|_| bad(&format!("not a boolean: {s:?}")))
}

fn list_of_lists<T: core::str::FromStr>(s: &str) -> Result<Vec<Vec<T>>> {
    s.split('|')
        .map(|part| part.split(',').filter(|x| !x.is_empty()).map(num).collect())
        .collect()
}

fn checked_pow(base: usize, exp: usize) -> Result<usize> {
    base.checked_pow(exp as u32).ok_or(Error::LimitExceeded {
        what: "recipe degree",
        value: usize::MAX,
        limit: usize::MAX,
    })
}

fn dihedral(n: usize) -> Result<Vec<Permutation>> {
    if n < 3 {
        return Err(bad("dihedral needs n >= 3"));
    }
    let rot = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
    let refl = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
    Ok(vec![rot, refl])
}

fn affine_line(q: u64, multiplier_order: u64, frobenius: bool) -> Result<Vec<Permutation>> {
    let f = Gf::new(q)?;
    if multiplier_order == 0 || (q - 1) % multiplier_order != 0 {
        return Err(bad("multiplier order must divide q - 1"));
    }
    let els: Vec<u32> = f.elements().collect();
    let map = |g: &dyn Fn(u32) -> u32| Permutation::from_images(els.iter().map(|&x| g(x) as usize).collect());
    let mut gens = vec![map(&|x| f.add(x, 1))?];
    let a = f.omega_pow((q - 1) / multiplier_order);
    if a != 1 {
        gens.push(map(&|x| f.mul(a, x))?);
    }
    if frobenius && f.degree() > 1 {
        gens.push(map(&|x| f.frobenius(x))?);
    }
    Ok(gens)
}

fn vec_mat(v: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let d = v.len();
    (0..d)
        .map(|j| (0..d).map(|i| v[i] * m[i * d + j]).sum::<u64>() % p)
        .collect()
}

fn affine(p: u64, d: usize, linear: &[Vec<u64>]) -> Result<Vec<Permutation>> {
    if !crate::perm::is_prime(p) || d == 0 {
        return Err(bad("affine needs a prime p and d >= 1"));
    }
    let n = checked_pow(p as usize, d)?;
    let decode = |x: usize| -> Vec<u64> { (0..d).map(|i| (x as u64 / p.pow(i as u32)) % p).collect() };
    let encode = |v: &[u64]| -> usize { v.iter().rev().fold(0, |acc, &c| acc * p + c) as usize };
    let mut gens = Vec::new();
    for i in 0..d {
        let images = (0..n)
            .map(|x| {
                let mut v = decode(x);
                v[i] = (v[i] + 1) % p;
                encode(&v)
            })
            .collect();
        gens.push(Permutation::from_images(images)?);
    }
    for m in linear {
        if m.len() != d * d {
            return Err(bad("linear map has the wrong size"));
        }
        let images = (0..n).map(|x| encode(&vec_mat(&decode(x), m, p))).collect();
        gens.push(Permutation::from_images(images).map_err(|_| bad("singular linear map"))?);
    }
    Ok(gens)
}

/// Points of `PG(d−1, q)` as vectors whose first non-zero coordinate is 1,
/// in lexicographic order.
fn projective_points(f: &Gf, d: usize) -> Vec<Vec<u32>> {
    let q = f.order();
    let mut pts = Vec::new();
    let mut v = vec![0u32; d];
    loop {
        if v.iter().find(|&&c| c != 0) == Some(&1) {
            pts.push(v.clone());
        }
        let mut i = d;
        loop {
            if i == 0 {
                return pts;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < q {
                break;
            }
            v[i] = 0;
        }
    }
}

fn projective(d: usize, q: u64, kind: ProjectiveKind) -> Result<Vec<Permutation>> {
    if d < 2 {
        return Err(bad("projective needs d >= 2"));
    }
    if kind == ProjectiveKind::Twisted && (d != 2 || q % 2 == 0) {
        return Err(bad("twisted kind needs d = 2 and odd q"));
    }
    let f = Gf::new(q)?;
    let pts = projective_points(&f, d);
    let index: BTreeMap<Vec<u32>, usize> = pts.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    // Semilinear map v ↦ (v^σ)·A, with σ = Frobenius when `frob` is set.
    let act = |a: &[u32], frob: bool| -> Result<Permutation> {
        let images = pts
            .iter()
            .map(|v| {
                let v: Vec<u32> = v.iter().map(|&c| if frob { f.frobenius(c) } else { c }).collect();
                let mut w = vec![0u32; d];
                for (j, wj) in w.iter_mut().enumerate() {
                    for (i, &vi) in v.iter().enumerate() {
                        *wj = f.add(*wj, f.mul(vi, a[i * d + j]));
                    }
                }
                let lead = *w.iter().find(|&&c| c != 0).expect("invertible matrix");
                let inv = f.inv(lead);
                let w: Vec<u32> = w.iter().map(|&c| f.mul(c, inv)).collect();
                index[&w]
            })
            .collect();
        Permutation::from_images(images)
    };
    let identity = |d: usize| -> Vec<u32> {
        let mut m = vec![0u32; d * d];
        for i in 0..d {
            m[i * d + i] = 1;
        }
        m
    };
    let mut gens = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i == j {
                continue;
            }
            for t in f.basis() {
                let mut m = identity(d);
                m[i * d + j] = t;
                gens.push(act(&m, false)?);
            }
        }
    }
    // Diagonal matrices of determinant 1 lie in the transvection group.
    let mut scale = identity(d);
    scale[0] = f.generator();
    match kind {
        ProjectiveKind::Special => {}
        ProjectiveKind::General => gens.push(act(&scale, false)?),
        ProjectiveKind::SemilinearSpecial => gens.push(act(&identity(d), true)?),
        ProjectiveKind::Semilinear => {
            gens.push(act(&scale, false)?);
            gens.push(act(&identity(d), true)?);
        }
        ProjectiveKind::Twisted => gens.push(act(&scale, true)?),
    }
    gens.retain(|g| !g.is_identity());
    Ok(gens)
}

fn product_action(m: usize, l: usize) -> Result<Vec<Permutation>> {
    if m < 2 || l < 1 {
        return Err(bad("product action needs m >= 2 and l >= 1"));
    }
    let n = checked_pow(m, l)?;
    let decode = |x: usize| -> Vec<usize> { (0..l).map(|i| (x / m.pow(i as u32)) % m).collect() };
    let encode = |v: &[usize]| -> usize { v.iter().rev().fold(0, |acc, &c| acc * m + c) };
    let on_points = |f: &dyn Fn(Vec<usize>) -> Vec<usize>| -> Result<Permutation> {
        Permutation::from_images((0..n).map(|x| encode(&f(decode(x)))).collect())
    };
    let mut gens = vec![
        on_points(&|mut v| {
            v[0] = match v[0] {
                0 => 1,
                1 => 0,
                c => c,
            };
            v
        })?,
        on_points(&|mut v| {
            v[0] = (v[0] + 1) % m;
            v
        })?,
    ];
    if l >= 2 {
        gens.push(on_points(&|mut v| {
            v.rotate_left(1);
            v
        })?);
        gens.push(on_points(&|mut v| {
            v.swap(0, 1);
            v
        })?);
    }
    gens.retain(|g| !g.is_identity());
    gens.dedup();
    Ok(gens)
}

fn pairs(m: usize, alternating: bool) -> Result<Vec<Permutation>> {
    if m < 3 {
        return Err(bad("pairs needs m >= 3"));
    }
    let base = if alternating {
        PermutationGroup::alternating(m)?
    } else {
        PermutationGroup::symmetric(m)?
    };
    let pts: Vec<(usize, usize)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
    let index: BTreeMap<(usize, usize), usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    base.generators()
        .iter()
        .map(|g| {
            let images = pts
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (g.apply(a), g.apply(b));
                    index[&(x.min(y), x.max(y))]
                })
                .collect();
            Permutation::from_images(images)
        })
        .collect()
}

fn design(n: usize, blocks: &[Vec<usize>]) -> Result<Vec<Permutation>> {
    let edges = blocks
        .iter()
        .map(|b| Subset::try_from_points(n, b))
        .collect::<Result<Vec<_>>>()?;
    let h = Hypergraph::new(n, edges)?;
    Ok(h.automorphism_group()?.generators().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn order(r: &Recipe) -> BigUint {
        let n = r.degree().unwrap();
        PermutationGroup::from_generators(n, r.synthesize().unwrap())
            .unwrap()
            .order()
            .clone()
    }

    #[test]
    fn classical_orders() {
        let cases: [(Recipe, u64); 8] = [
            (Recipe::Dihedral { n: 7 }, 14),
            (
                Recipe::AffineLine {
                    q: 8,
                    multiplier_order: 7,
                    frobenius: true,
                },
                168,
            ),
            (
                Recipe::Projective {
                    d: 2,
                    q: 8,
                    kind: ProjectiveKind::Special,
                },
                504,
            ),
            (
                Recipe::Projective {
                    d: 3,
                    q: 2,
                    kind: ProjectiveKind::Special,
                },
                168,
            ),
            (
                Recipe::Projective {
                    d: 2,
                    q: 9,
                    kind: ProjectiveKind::Semilinear,
                },
                1440,
            ),
            (Recipe::ProductAction { m: 3, l: 2 }, 72),
            (
                Recipe::Pairs {
                    m: 5,
                    alternating: true,
                },
                60,
            ),
            (
                Recipe::Affine {
                    p: 2,
                    d: 3,
                    linear: vec![vec![0, 1, 0, 0, 0, 1, 1, 0, 0], vec![1, 1, 0, 0, 1, 0, 0, 0, 1]],
                },
                1344,
            ),
        ];
        for (r, expected) in cases {
            assert_eq!(order(&r), BigUint::from(expected), "{r}");
        }
    }

    #[test]
    fn text_form_round_trips() {
        let recipes = [
            Recipe::Cyclic { n: 5 },
            Recipe::AffineLine {
                q: 9,
                multiplier_order: 4,
                frobenius: false,
            },
            Recipe::Affine {
                p: 3,
                d: 2,
                linear: vec![vec![0, 2, 1, 0], vec![1, 1, 1, 2]],
            },
            Recipe::Projective {
                d: 2,
                q: 9,
                kind: ProjectiveKind::Twisted,
            },
            Recipe::Pairs {
                m: 5,
                alternating: false,
            },
            Recipe::Design {
                n: 4,
                blocks: vec![vec![0, 1], vec![2, 3]],
            },
            Recipe::Explicit {
                n: 3,
                generators: vec!["(1,2,3)".into(), "(1,2)".into()],
            },
        ];
        for r in recipes {
            assert_eq!(Recipe::parse(&r.to_string()).unwrap(), r);
        }
        assert!(Recipe::parse("cyclic").is_err());
        assert!(Recipe::parse("cyclic n=5 q=3").is_err());
        assert!(Recipe::parse("spiral n=5").is_err());
    }

    #[test]
    fn twisted_extension_differs_from_pgl_and_psigmal() {
        // Involution counts separate the three index-2 overgroups of PSL_2(9).
        let count = |kind| {
            let r = Recipe::Projective { d: 2, q: 9, kind };
            let g = PermutationGroup::from_generators(10, r.synthesize().unwrap()).unwrap();
            g.elements(1000)
                .unwrap()
                .filter(|x| !x.is_identity() && x.pow(2).is_identity())
                .count()
        };
        assert_eq!(count(ProjectiveKind::Twisted), 45);
        assert_eq!(count(ProjectiveKind::General), 81);
        assert_eq!(count(ProjectiveKind::SemilinearSpecial), 75);
    }

    #[test]
    fn design_recovers_symmetry() {
        // Two disjoint edges on four points: the dihedral group of order 8.
        let r = Recipe::Design {
            n: 4,
            blocks: vec![vec![0, 1], vec![2, 3]],
        };
        assert_eq!(order(&r), BigUint::from(8u32));
    }
}
