//! Bundled worked surfaces with frozen expected results.
//!
//! Five models cover the spectrum of fiber configurations: an extremal
//! surface whose only conic bundle has a single `D9` fiber, a generic
//! blowup where every singular fiber is `A2`, a mixed `A2`/`A3` surface,
//! and two surfaces realizing `D4`/`A4`/`A2` and `D5`/`D3`/`A3`. A sixth
//! model carries a pencil of conics for the construction route.
//!
//! Each fixture documents its declared inventory's completeness for the
//! target class: the negative curves orthogonal to the target are exactly
//! the listed ones, so the enumerated singular fibers are the singular
//! fibers of that conic bundle, not just a sample.

use crate::admissibility::{admits, A2Verdict};
use crate::conic_bundles::{
    enumerate_singular_fibers, verify_conic_class, FiberType, SingularConicFiber,
};
use crate::ns_lattice::DivisorClass;
use crate::surface_model::SurfaceModel;
use serde::Serialize;

/// One bundled model plus everything the corpus runner asserts about it.
pub struct Fixture {
    pub name: &'static str,
    pub json: &'static str,
    /// The showcased conic class.
    pub target: DivisorClass,
    /// Expected singular fibers of the target bundle. When `exact` is set
    /// the enumeration must equal this set; otherwise it must contain it.
    pub expected_fibers: Vec<(FiberType, Vec<(&'static str, i64)>)>,
    pub exact: bool,
    /// Expected admissibility verdicts (a2, an, d3, dm).
    pub expected_admits: (A2Verdict, bool, bool, bool),
    pub expected_rank: i64,
}

/// The five corpus fixtures, in a fixed order.
pub fn fixtures() -> Vec<Fixture> {
    let line_through_p1 = DivisorClass::from_i64([1, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
    vec![
        Fixture {
            name: "II*+II",
            json: include_str!("../fixtures/chain_e8.json"),
            target: line_through_p1.clone(),
            expected_fibers: vec![(
                FiberType::Dm(9),
                vec![
                    ("E9", 2),
                    ("E8", 2),
                    ("E7", 2),
                    ("E6", 2),
                    ("E5", 2),
                    ("E4", 2),
                    ("E3", 2),
                    ("E2", 1),
                    ("L", 1),
                ],
            )],
            exact: true,
            expected_admits: (A2Verdict::Excluded, false, false, true),
            expected_rank: 0,
        },
        Fixture {
            name: "II+10I1",
            json: include_str!("../fixtures/generic_nine.json"),
            target: line_through_p1.clone(),
            expected_fibers: vec![
                (FiberType::A2, vec![("E2", 1), ("L12", 1)]),
                (FiberType::A2, vec![("E3", 1), ("L13", 1)]),
                (FiberType::A2, vec![("E4", 1), ("L14", 1)]),
                (FiberType::A2, vec![("E5", 1), ("L15", 1)]),
                (FiberType::A2, vec![("E6", 1), ("L16", 1)]),
                (FiberType::A2, vec![("E7", 1), ("L17", 1)]),
                (FiberType::A2, vec![("E8", 1), ("L18", 1)]),
                (FiberType::A2, vec![("E9", 1), ("L19", 1)]),
            ],
            exact: true,
            expected_admits: (A2Verdict::Possible, false, false, false),
            expected_rank: 8,
        },
        Fixture {
            name: "IV+II+6I1",
            json: include_str!("../fixtures/concurrent_lines.json"),
            target: line_through_p1.clone(),
            expected_fibers: vec![
                (FiberType::A2, vec![("E2", 1), ("L12", 1)]),
                (FiberType::A2, vec![("E3", 1), ("L13", 1)]),
                (FiberType::A2, vec![("E4", 1), ("L14", 1)]),
                (FiberType::A2, vec![("E5", 1), ("L15", 1)]),
                (FiberType::A2, vec![("E7", 1), ("L17", 1)]),
                (FiberType::A2, vec![("E8", 1), ("L18", 1)]),
                (FiberType::An(3), vec![("E6", 1), ("L1", 1), ("E9", 1)]),
            ],
            exact: true,
            expected_admits: (A2Verdict::Possible, true, false, false),
            expected_rank: 6,
        },
        Fixture {
            name: "I7+II+3I1",
            json: include_str!("../fixtures/cycle_i7.json"),
            target: line_through_p1.clone(),
            expected_fibers: vec![
                (FiberType::A2, vec![("E5", 1), ("L15", 1)]),
                (
                    FiberType::An(4),
                    vec![("E4", 1), ("L2", 1), ("E3", 1), ("F3", 1)],
                ),
                (
                    FiberType::Dm(4),
                    vec![("G2", 2), ("F2", 2), ("E2", 1), ("L1", 1)],
                ),
            ],
            exact: false,
            expected_admits: (A2Verdict::Possible, true, false, true),
            expected_rank: 2,
        },
        Fixture {
            name: "I2*+III+I1",
            json: include_str!("../fixtures/star_i2.json"),
            target: line_through_p1,
            expected_fibers: vec![
                (FiberType::An(3), vec![("E2", 1), ("L3", 1), ("E3", 1)]),
                (FiberType::D3, vec![("F4", 2), ("E4", 1), ("L2", 1)]),
                (
                    FiberType::Dm(5),
                    vec![("I1", 2), ("H1", 2), ("G1", 2), ("F1", 1), ("L1", 1)],
                ),
            ],
            exact: false,
            expected_admits: (A2Verdict::Possible, true, true, true),
            expected_rank: 1,
        },
    ]
}

/// Model carrying a pencil of conics through four of its base points; used
/// by the construction route and its tests.
pub fn illustration_json() -> &'static str {
    include_str!("../fixtures/conic_pencil.json")
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub passed: bool,
    pub lines: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub fixtures: Vec<FixtureReport>,
    pub passed: usize,
    pub total: usize,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.fixtures {
            out.push_str(&format!(
                "[{}] {}\n",
                if f.passed { "PASS" } else { "FAIL" },
                f.name
            ));
            for line in &f.lines {
                out.push_str(&format!("  {line}\n"));
            }
        }
        out.push_str(&format!("{}/{} fixtures pass\n", self.passed, self.total));
        out
    }
}

fn fiber_summary(f: &SingularConicFiber) -> String {
    let support: Vec<String> = f
        .support
        .iter()
        .map(|(l, m)| {
            if *m == 1 {
                l.clone()
            } else {
                format!("{m}{l}")
            }
        })
        .collect();
    format!("{} = {}", f.fiber_type, support.join(" + "))
}

/// Runs every fixture end to end: validation, admissibility, conic-class
/// certification and fiber enumeration against the frozen expectations.
pub fn run_corpus() -> CorpusReport {
    let mut reports = Vec::new();
    for fixture in fixtures() {
        let mut lines = Vec::new();
        let mut passed = true;
        let check = |ok: bool, line: String, lines: &mut Vec<String>| {
            lines.push(format!("[{}] {line}", if ok { "ok" } else { "FAIL" }));
            ok
        };

        let model = match SurfaceModel::from_json(fixture.json) {
            Ok(m) => m,
            Err(e) => {
                reports.push(FixtureReport {
                    name: fixture.name.to_string(),
                    passed: false,
                    lines: vec![format!("[FAIL] parse: {e}")],
                });
                continue;
            }
        };

        let validation = model.validate();
        passed &= check(
            validation.valid,
            format!(
                "model valid; config {} euler {} rank {}",
                model.config,
                validation.config.euler_sum,
                validation
                    .config
                    .mw_rank
                    .map(|r| r.to_string())
                    .unwrap_or_else(|| "?".into())
            ),
            &mut lines,
        );
        passed &= check(
            validation.config.mw_rank == Some(fixture.expected_rank),
            format!("rank = {}", fixture.expected_rank),
            &mut lines,
        );

        match admits(&model.config) {
            Ok(r) => {
                let got = (r.a2, r.an, r.d3, r.dm);
                passed &= check(
                    got == fixture.expected_admits,
                    format!("admits: a2 {}, an {}, d3 {}, dm {}", r.a2, r.an, r.d3, r.dm),
                    &mut lines,
                );
            }
            Err(e) => {
                passed &= check(false, format!("admits failed: {e}"), &mut lines);
            }
        }

        match verify_conic_class(&fixture.target, &model) {
            Ok(certified) => {
                let found = enumerate_singular_fibers(&model, &certified);
                for f in &found {
                    lines.push(format!("  fiber {}", fiber_summary(f)));
                }
                let found_keys: Vec<(FiberType, Vec<(String, i64)>)> = found
                    .iter()
                    .map(|f| (f.fiber_type, f.support_key()))
                    .collect();
                let mut expected_keys: Vec<(FiberType, Vec<(String, i64)>)> = fixture
                    .expected_fibers
                    .iter()
                    .map(|(t, s)| {
                        let mut key: Vec<(String, i64)> =
                            s.iter().map(|(l, m)| (l.to_string(), *m)).collect();
                        key.sort();
                        (*t, key)
                    })
                    .collect();
                expected_keys.sort();
                let ok = if fixture.exact {
                    let mut got = found_keys.clone();
                    got.sort();
                    got == expected_keys
                } else {
                    expected_keys.iter().all(|e| found_keys.contains(e))
                };
                passed &= check(
                    ok,
                    format!(
                        "target {}: {} singular fiber(s), expected {}{}",
                        certified.class,
                        found.len(),
                        if fixture.exact {
                            "exactly "
                        } else {
                            "at least "
                        },
                        fixture.expected_fibers.len()
                    ),
                    &mut lines,
                );
            }
            Err(e) => {
                passed &= check(false, format!("conic class rejected: {e}"), &mut lines);
            }
        }

        reports.push(FixtureReport {
            name: fixture.name.to_string(),
            passed,
            lines,
        });
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let total = reports.len();
    CorpusReport {
        fixtures: reports,
        passed,
        total,
    }
}
