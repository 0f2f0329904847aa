//! Conic classes from plane pencils of lines or conics.
//!
//! A pencil of genus-zero plane curves whose base locus sits inside the
//! base locus of the cubic pencil pulls back to a base-point-free pencil on
//! the surface, hence a conic bundle. The class is `d·l - Σ mi·ei` for
//! degree `d` and base multiplicities `mi`, and the conic-class conditions
//! reduce to the arithmetic identities `d² = Σ mi²` and `3d = Σ mi + 2`,
//! which are checked rather than assumed. Smoothness of the general member
//! is automatic in degree <= 2 with these budgets.

use crate::conic_bundles::{verify_conic_class, ConicClass, ConicError};
use crate::surface_model::SurfaceModel;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("pencil base point {0} is not among the nine blown-up points")]
    BaseLocusNotContained(usize),
    #[error("invalid pencil base: {0}")]
    InvalidBase(String),
    #[error("pencil class {class} is not a conic class: {details}")]
    DegenerateClass { class: String, details: String },
    #[error(transparent)]
    Conic(#[from] ConicError),
}

/// Kind of plane pencil used to induce a conic bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PencilKind {
    Lines,
    Conics,
}

/// A pencil of lines through one base point, or of conics through four
/// (infinitely near assignments allowed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanePencil {
    pub kind: PencilKind,
    /// Pairs (point id, multiplicity).
    pub base: Vec<(usize, i64)>,
}

impl PlanePencil {
    pub fn lines_through(point: usize) -> Self {
        PlanePencil {
            kind: PencilKind::Lines,
            base: vec![(point, 1)],
        }
    }

    pub fn conics_through(points: [usize; 4]) -> Self {
        PlanePencil {
            kind: PencilKind::Conics,
            base: points.into_iter().map(|p| (p, 1)).collect(),
        }
    }

    fn degree(&self) -> i64 {
        match self.kind {
            PencilKind::Lines => 1,
            PencilKind::Conics => 2,
        }
    }
}

/// Builds the conic class of the pencil on the model and certifies it.
///
/// The base locus must be contained in the model's nine points, the
/// multiplicity assignment must respect the proximity forest, and the class
/// arithmetic must come out to a conic class; each failure is reported
/// separately and verification errors are forwarded.
pub fn conic_class_from_pencil(
    model: &SurfaceModel,
    pencil: &PlanePencil,
) -> Result<ConicClass, ConstructionError> {
    for &(p, _) in &pencil.base {
        if !(1..=9).contains(&p) {
            return Err(ConstructionError::BaseLocusNotContained(p));
        }
    }
    let total: i64 = pencil.base.iter().map(|&(_, m)| m).sum();
    match pencil.kind {
        PencilKind::Lines => {
            // One simple base point, or a point plus one direction
            // infinitely near it.
            let shape_ok = match pencil.base.len() {
                1 => pencil.base[0].1 == 1,
                2 => {
                    total == 2
                        && pencil.base.iter().all(|&(_, m)| m == 1)
                        && pencil.base.iter().any(|&(p, _)| {
                            pencil
                                .base
                                .iter()
                                .any(|&(q, _)| model.forest.parent_of(p) == Some(q))
                        })
                }
                _ => false,
            };
            if !shape_ok {
                return Err(ConstructionError::InvalidBase(
                    "a line pencil takes one simple base point, or a point plus one \
                     immediately proximate direction"
                        .into(),
                ));
            }
        }
        PencilKind::Conics => {
            if total != 4 {
                return Err(ConstructionError::InvalidBase(format!(
                    "a conic pencil needs total base multiplicity 4, found {total}"
                )));
            }
        }
    }

    let d = pencil.degree();
    let class = crate::surface_model::strict_transform_class(&model.forest, d, &pencil.base)
        .map_err(|e| ConstructionError::InvalidBase(e.to_string()))?;

    // d² = Σ mi² and 3d = Σ mi + 2 are exactly the square-zero and
    // anticanonical-degree conditions for d·l - Σ mi·ei.
    let sq: i64 = pencil.base.iter().map(|&(_, m)| m * m).sum();
    if d * d != sq || 3 * d != total + 2 {
        return Err(ConstructionError::DegenerateClass {
            class: class.to_string(),
            details: format!(
                "d² = {} vs Σmi² = {sq}; 3d = {} vs Σmi + 2 = {}",
                d * d,
                3 * d,
                total + 2
            ),
        });
    }

    Ok(verify_conic_class(&class, model)?)
}
