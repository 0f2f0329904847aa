//! Which conic-bundle fiber types a Kodaira configuration admits.
//!
//! Three of the four reducible types are decided exactly by the
//! configuration:
//!
//! - `An` (`n >= 3`) exists iff some reducible fiber is not `II*`;
//! - `D3` exists iff there are at least two reducible fibers;
//! - `Dm` (`m >= 4`) exists iff there is a nonreduced fiber or an `I_n`
//!   with `n >= 4`.
//!
//! For `A2` only a necessary condition is available: an extremal fibration
//! (Mordell-Weil rank 0) has only torsion sections, no two of which meet,
//! so rank 0 excludes `A2`. Positive rank does not guarantee one: the
//! configuration `(III*, 3I1)` has rank 1 and still admits no `A2`, so the
//! verdict is never "guaranteed", only "possible".

use crate::kodaira::{FiberConfiguration, KodairaType};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdmissibilityError {
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
}

/// Verdict for type `A2`: a necessary condition only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum A2Verdict {
    Excluded,
    Possible,
}

impl fmt::Display for A2Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            A2Verdict::Excluded => write!(f, "excluded"),
            A2Verdict::Possible => write!(f, "possible"),
        }
    }
}

impl Serialize for A2Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Per-type verdicts with the triggering fibers named in `reasons`.
#[derive(Debug, Clone, Serialize)]
pub struct AdmissibilityReport {
    pub a2: A2Verdict,
    pub an: bool,
    pub d3: bool,
    pub dm: bool,
    pub reasons: Reasons,
}

#[derive(Debug, Clone, Serialize)]
pub struct Reasons {
    pub a2: String,
    pub an: String,
    pub d3: String,
    pub dm: String,
}

/// Decides the admissible singular fiber types for a valid configuration.
pub fn admits(config: &FiberConfiguration) -> Result<AdmissibilityReport, AdmissibilityError> {
    let report = config.validate();
    if !report.is_valid() {
        return Err(AdmissibilityError::InvalidConfiguration(
            report.problems.join("; "),
        ));
    }
    let rank = report.mw_rank.expect("valid configuration has a rank");
    let reducible = report.reducible;
    let nonreduced = report.nonreduced;

    let (a2, a2_reason) = if rank == 0 {
        (
            A2Verdict::Excluded,
            "extremal fibration: rank 0 leaves only torsion sections, which never meet".to_string(),
        )
    } else {
        (
            A2Verdict::Possible,
            format!("rank {rank} > 0 is necessary for two meeting sections; not sufficient"),
        )
    };

    let an_witness = reducible
        .iter()
        .find(|t| **t != KodairaType::IIStar)
        .copied();
    let (an, an_reason) = match an_witness {
        Some(t) => (true, format!("reducible fiber {t} distinct from II*")),
        None => (false, "no reducible fiber other than II*".to_string()),
    };

    let (d3, d3_reason) = if reducible.len() >= 2 {
        (
            true,
            format!(
                "at least two reducible fibers: {}",
                reducible
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        )
    } else {
        (false, format!("{} reducible fiber(s)", reducible.len()))
    };

    let dm_witness = nonreduced.first().copied().or_else(|| {
        config
            .iter()
            .find(|t| matches!(t, KodairaType::In(n) if *n >= 4))
            .copied()
    });
    let (dm, dm_reason) = match dm_witness {
        Some(t) if !t.is_reduced() => (true, format!("nonreduced fiber {t}")),
        Some(t) => (true, format!("fiber {t} with n >= 4")),
        None => (
            false,
            "no nonreduced fiber and no I_n with n >= 4".to_string(),
        ),
    };

    Ok(AdmissibilityReport {
        a2,
        an,
        d3,
        dm,
        reasons: Reasons {
            a2: a2_reason,
            an: an_reason,
            d3: d3_reason,
            dm: dm_reason,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdicts(tags: &[&str]) -> (A2Verdict, bool, bool, bool) {
        let r = admits(&FiberConfiguration::parse(tags).unwrap()).unwrap();
        (r.a2, r.an, r.d3, r.dm)
    }

    #[test]
    fn worked_configurations() {
        assert_eq!(
            verdicts(&["II*", "II"]),
            (A2Verdict::Excluded, false, false, true)
        );
        assert_eq!(
            verdicts(&["II", "I1", "I1", "I1", "I1", "I1", "I1", "I1", "I1", "I1", "I1"]),
            (A2Verdict::Possible, false, false, false)
        );
        assert_eq!(
            verdicts(&["IV", "II", "I1", "I1", "I1", "I1", "I1", "I1"]),
            (A2Verdict::Possible, true, false, false)
        );
        assert_eq!(
            verdicts(&["I7", "II", "I1", "I1", "I1"]),
            (A2Verdict::Possible, true, false, true)
        );
        assert_eq!(
            verdicts(&["I2*", "III", "I1"]),
            (A2Verdict::Possible, true, true, true)
        );
        // Rank 1, yet the necessary condition is all that can be said.
        assert_eq!(
            verdicts(&["III*", "I1", "I1", "I1"]),
            (A2Verdict::Possible, true, false, true)
        );
    }

    #[test]
    fn invalid_configuration_is_refused() {
        let bad = FiberConfiguration::parse(&["II*", "II*"]).unwrap();
        assert!(matches!(
            admits(&bad),
            Err(AdmissibilityError::InvalidConfiguration(_))
        ));
    }

    #[test]
    fn monotonicity_under_added_fibers() {
        // Adding a reducible fiber never turns an/d3 off; adding I_n
        // (n >= 4) never turns dm off. Euler bookkeeping is bypassed by
        // checking on the raw flags rather than full validity.
        let base =
            FiberConfiguration::parse(&["IV", "II", "I1", "I1", "I1", "I1", "I1", "I1"]).unwrap();
        let r0 = admits(&base).unwrap();
        // Swap six I1 for I6: still Euler 12, adds a big cycle.
        let bigger = FiberConfiguration::parse(&["IV", "II", "I6"]).unwrap();
        let r1 = admits(&bigger).unwrap();
        assert!(r1.an >= r0.an);
        assert!(r1.d3 >= r0.d3);
        assert!(r1.dm >= r0.dm);
        assert!(r1.dm);
    }

    #[test]
    fn enumeration_respects_admissibility() {
        // Every type produced over a model is admissible for its
        // configuration, and each admissible reducible type with a
        // constructive witness in the inventory is actually produced.
        use crate::conic_bundles::{enumerate_conic_bundles, FiberType};
        use crate::corpus;
        use crate::surface_model::SurfaceModel;

        for fixture in corpus::fixtures() {
            let model = SurfaceModel::from_json(fixture.json).unwrap();
            let report = admits(&model.config).unwrap();
            let mut produced = std::collections::BTreeSet::new();
            for bundle in enumerate_conic_bundles(&model, 2) {
                for fiber in &bundle.fibers {
                    match fiber.fiber_type {
                        FiberType::A2 => {
                            assert_eq!(report.a2, A2Verdict::Possible, "{}", fixture.name);
                            produced.insert("a2");
                        }
                        FiberType::An(_) => {
                            assert!(report.an, "{}", fixture.name);
                            produced.insert("an");
                        }
                        FiberType::D3 => {
                            assert!(report.d3, "{}", fixture.name);
                            produced.insert("d3");
                        }
                        FiberType::Dm(_) => {
                            assert!(report.dm, "{}", fixture.name);
                            produced.insert("dm");
                        }
                        FiberType::Type0 => unreachable!(),
                    }
                }
            }
            // The bundled inventories realize the constructive direction
            // for the three decidable types.
            assert_eq!(report.an, produced.contains("an"), "{}", fixture.name);
            assert_eq!(report.d3, produced.contains("d3"), "{}", fixture.name);
            assert_eq!(report.dm, produced.contains("dm"), "{}", fixture.name);
        }
    }

    #[test]
    fn reasons_name_triggering_fibers() {
        let r = admits(&FiberConfiguration::parse(&["I2*", "III", "I1"]).unwrap()).unwrap();
        assert!(r.reasons.an.contains("I2*") || r.reasons.an.contains("III"));
        assert!(r.reasons.dm.contains("I2*"));
        assert!(r.reasons.d3.contains("I2*") && r.reasons.d3.contains("III"));
    }
}
