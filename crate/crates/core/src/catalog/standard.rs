//! The built-in list of catalog groups and their construction recipes.
//!
//! Covers every primitive group of degrees 5 to 12, `PSL(3,4)` on the 21
//! points of the projective plane over `GF(4)`, and the cyclic groups of
//! degrees 2 to 12. Expected orders are the classical values and are not
//! derived from the recipes.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::recipes::{ProjectiveKind, Recipe};
use super::CatalogEntry;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub name: &'static str,
    pub recipe: Recipe,
    pub expected_order: u64,
    pub primitive: bool,
    pub tag: &'static str,
    pub table1: bool,
    pub note: Option<&'static str>,
}

impl Definition {
    /// Runs the recipe and packages the generators as an unverified entry.
    pub fn synthesize(&self) -> Result<CatalogEntry> {
        let mut e = CatalogEntry::from_recipe(
            self.name,
            &self.recipe,
            BigUint::from(self.expected_order),
            self.primitive,
            self.tag,
            self.table1,
        )?;
        e.note = self.note.map(String::from);
        Ok(e)
    }
}

/// Synthesizes every built-in definition. The result is not verified; pass
/// it to [`super::Catalog::new`].
pub fn synthesize_standard() -> Result<Vec<CatalogEntry>> {
    standard_definitions().iter().map(Definition::synthesize).collect()
}

const DEGREE9_NOTE: &str = "unique primitive group of its order at degree 9; \
    the fingerprint separates it from every other degree-9 entry";

fn def(name: &'static str, recipe: Recipe, order: u64, tag: &'static str) -> Definition {
    Definition {
        name,
        recipe,
        expected_order: order,
        primitive: true,
        tag,
        table1: false,
        note: None,
    }
}

fn exception(name: &'static str, recipe: Recipe, order: u64, tag: &'static str) -> Definition {
    Definition {
        table1: true,
        ..def(name, recipe, order, tag)
    }
}

fn line(q: u64, multiplier_order: u64, frobenius: bool) -> Recipe {
    Recipe::AffineLine {
        q,
        multiplier_order,
        frobenius,
    }
}

fn proj(d: usize, q: u64, kind: ProjectiveKind) -> Recipe {
    Recipe::Projective { d, q, kind }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Translates of `base` in `Z/n`, each optionally extended by `extra`.
fn developed(n: usize, base: &[usize], extra: Option<usize>) -> Vec<Vec<usize>> {
    (0..n)
        .map(|t| {
            let mut b: Vec<usize> = base.iter().map(|x| (x + t) % n).collect();
            b.extend(extra);
            b.sort_unstable();
            b
        })
        .collect()
}

const M11_GENERATORS: [&str; 2] = ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"];
const M12_EXTRA: &str = "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)";

pub fn standard_definitions() -> Vec<Definition> {
    use ProjectiveKind::*;
    let mut out = Vec::new();

    for k in 2..=12usize {
        let prime = crate::perm::is_prime(k as u64);
        out.push(Definition {
            name: CYCLIC_NAMES[k - 2],
            recipe: Recipe::Cyclic { n: k },
            expected_order: k as u64,
            primitive: prime,
            tag: if prime { "HA" } else { "transitive" },
            table1: k == 5 || k == 7,
            note: None,
        });
    }

    out.extend([
        def("D5", Recipe::Dihedral { n: 5 }, 10, "HA"),
        exception("AGL(1,5)", line(5, 4, false), 20, "HA"),
        exception("PGL(2,5)", proj(2, 5, General), 120, "AS"),
        def("PSL(2,5)", proj(2, 5, Special), 60, "AS"),
        def("D7", Recipe::Dihedral { n: 7 }, 14, "HA"),
        exception("C7:C3", line(7, 3, false), 21, "HA"),
        def("AGL(1,7)", line(7, 6, false), 42, "HA"),
        Definition {
            note: Some("isomorphic to PSL(3,2), acting on the points of the Fano plane"),
            ..def("PSL(2,7)", proj(3, 2, Special), 168, "AS")
        },
        exception("AGL(1,8)", line(8, 7, false), 56, "HA"),
        exception("AGammaL(1,8)", line(8, 7, true), 168, "HA"),
        def(
            "AGL(3,2)",
            Recipe::Affine {
                p: 2,
                d: 3,
                linear: transvections(3),
            },
            1344,
            "HA",
        ),
        exception("PSL(2,7)", proj(2, 7, Special), 168, "AS"),
        def("PGL(2,7)", proj(2, 7, General), 336, "AS"),
        Definition {
            note: Some(DEGREE9_NOTE),
            ..exception("(C3xC3):C4", line(9, 4, false), 36, "HA")
        },
        def("(C3xC3):D8", Recipe::ProductAction { m: 3, l: 2 }, 72, "HA"),
        exception("AGL(1,9)", line(9, 8, false), 72, "HA"),
        Definition {
            note: Some(DEGREE9_NOTE),
            ..exception(
                "(C3xC3):Q8",
                Recipe::Affine {
                    p: 3,
                    d: 2,
                    linear: vec![vec![0, 2, 1, 0], vec![1, 1, 1, 2]],
                },
                72,
                "HA",
            )
        },
        def("AGammaL(1,9)", line(9, 8, true), 144, "HA"),
        exception(
            "ASL(2,3)",
            Recipe::Affine {
                p: 3,
                d: 2,
                linear: transvections(2),
            },
            216,
            "HA",
        ),
        def(
            "AGL(2,3)",
            Recipe::Affine {
                p: 3,
                d: 2,
                linear: {
                    let mut m = transvections(2);
                    m.push(vec![2, 0, 0, 1]);
                    m
                },
            },
            432,
            "HA",
        ),
        exception("PSL(2,8)", proj(2, 8, Special), 504, "AS"),
        exception("PGammaL(2,8)", proj(2, 8, Semilinear), 1512, "AS"),
        def(
            "Alt(5){2}",
            Recipe::Pairs {
                m: 5,
                alternating: true,
            },
            60,
            "AS",
        ),
        def(
            "Sym(5){2}",
            Recipe::Pairs {
                m: 5,
                alternating: false,
            },
            120,
            "AS",
        ),
        exception("PSL(2,9)", proj(2, 9, Special), 360, "AS"),
        def("PSigmaL(2,9)", proj(2, 9, SemilinearSpecial), 720, "AS"),
        exception("PGL(2,9)", proj(2, 9, General), 720, "AS"),
        def("M10", proj(2, 9, Twisted), 720, "AS"),
        def("PGammaL(2,9)", proj(2, 9, Semilinear), 1440, "AS"),
        def("D11", Recipe::Dihedral { n: 11 }, 22, "HA"),
        def("C11:C5", line(11, 5, false), 55, "HA"),
        def("AGL(1,11)", line(11, 10, false), 110, "HA"),
        Definition {
            note: Some("automorphism group of the quadratic-residue biplane on 11 points"),
            ..def(
                "PSL(2,11)",
                Recipe::Design {
                    n: 11,
                    blocks: developed(11, &[1, 3, 4, 5, 9], None),
                },
                660,
                "AS",
            )
        },
        def(
            "M11",
            Recipe::Explicit {
                n: 11,
                generators: M11_GENERATORS.iter().map(|s| s.to_string()).collect(),
            },
            7920,
            "AS",
        ),
        def("PSL(2,11)", proj(2, 11, Special), 660, "AS"),
        def("PGL(2,11)", proj(2, 11, General), 1320, "AS"),
        Definition {
            note: Some("automorphism group of the Hadamard 3-(12,6,2) design"),
            ..def(
                "M11",
                Recipe::Design {
                    n: 12,
                    blocks: {
                        let mut b = developed(11, &[1, 3, 4, 5, 9], Some(11));
                        b.extend(developed(11, &[0, 2, 6, 7, 8, 10], None));
                        b
                    },
                },
                7920,
                "AS",
            )
        },
        def(
            "M12",
            Recipe::Explicit {
                n: 12,
                generators: M11_GENERATORS
                    .iter()
                    .chain([&M12_EXTRA])
                    .map(|s| s.to_string())
                    .collect(),
            },
            95040,
            "AS",
        ),
        def("PSL(3,4)", proj(3, 4, Special), 20160, "AS"),
    ]);

    for n in 5..=12usize {
        let f = factorial(n as u64);
        out.push(def(GIANT_NAMES[n - 5].0, Recipe::Alternating { n }, f / 2, "AS"));
        out.push(def(GIANT_NAMES[n - 5].1, Recipe::Symmetric { n }, f, "AS"));
    }
    out.sort_by(|a, b| {
        let da = a.recipe.degree().unwrap_or(0);
        let db = b.recipe.degree().unwrap_or(0);
        (da, a.expected_order, a.name).cmp(&(db, b.expected_order, b.name))
    });
    out
}

const CYCLIC_NAMES: [&str; 11] = ["C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12"];

const GIANT_NAMES: [(&str, &str); 8] = [
    ("Alt(5)", "Sym(5)"),
    ("Alt(6)", "Sym(6)"),
    ("Alt(7)", "Sym(7)"),
    ("Alt(8)", "Sym(8)"),
    ("Alt(9)", "Sym(9)"),
    ("Alt(10)", "Sym(10)"),
    ("Alt(11)", "Sym(11)"),
    ("Alt(12)", "Sym(12)"),
];

/// Elementary transvections `I + E_ij`, generating `SL_d(p)` for prime `p`.
fn transvections(d: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                let mut m = vec![0; d * d];
                for k in 0..d {
                    m[k * d + k] = 1;
                }
                m[i * d + j] = 1;
                out.push(m);
            }
        }
    }
    out
}
