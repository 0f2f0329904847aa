//! Declarative blowup models of rational elliptic surfaces.
//!
//! A model lists the nine base points of the cubic pencil as a proximity
//! forest (each point is a plane point or infinitely near exactly one
//! earlier point), a set of named curves given by blowup data, the Kodaira
//! configuration of the elliptic fibration, and the membership of each
//! reducible fiber. The module verifies rather than discovers: completeness
//! of downstream enumerations is always relative to the declared inventory,
//! since a surface of positive Mordell-Weil rank carries infinitely many
//! sections.

use crate::construction::{PencilKind, PlanePencil};
use crate::kodaira::{build_fiber_graph, ConfigReport, FiberConfiguration, KodairaType};
use crate::ns_lattice::DivisorClass;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("point id {0} out of range 1..=9")]
    InvalidPoint(usize),
    #[error("inconsistent proximity: {0}")]
    InconsistentProximity(String),
    #[error("invalid curve spec: {0}")]
    InvalidSpec(String),
    #[error("curves `{0}` and `{1}` pair negatively; they cannot be distinct integral curves")]
    NegativeEdge(String, String),
    #[error("unknown curve label `{0}`")]
    UnknownCurve(String),
    #[error("model schema error: {0}")]
    Schema(String),
}

/// Proximity forest of the nine base points. `parent[i]` is the earlier
/// point that point `i+1` is infinitely near, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePointForest {
    parent: [Option<usize>; 9],
}

impl BasePointForest {
    /// Nine distinct plane points.
    pub fn plane_points() -> Self {
        BasePointForest { parent: [None; 9] }
    }

    /// `parent[i]` (0-indexed slot, 1-indexed value) names the point that
    /// point `i+1` is infinitely near. Parents must come earlier in the
    /// blowup order.
    pub fn new(parent: [Option<usize>; 9]) -> Result<Self, ModelError> {
        for (i, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                if !(1..=9).contains(p) {
                    return Err(ModelError::InvalidPoint(*p));
                }
                if *p > i {
                    return Err(ModelError::InconsistentProximity(format!(
                        "point {} is infinitely near point {}, which does not precede it",
                        i + 1,
                        p
                    )));
                }
            }
        }
        Ok(BasePointForest { parent })
    }

    pub fn parent_of(&self, point: usize) -> Option<usize> {
        assert!((1..=9).contains(&point));
        self.parent[point - 1]
    }

    pub fn children_of(&self, point: usize) -> Vec<usize> {
        (1..=9)
            .filter(|&j| self.parent[j - 1] == Some(point))
            .collect()
    }
}

/// Blowup data describing one curve on the surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveSpec {
    /// Strict transform of the exceptional divisor over the given point.
    Exceptional { point: usize },
    /// Strict transform of a plane line with the given point multiplicities.
    Line { through: Vec<(usize, i64)> },
    /// Strict transform of a plane conic with the given point multiplicities.
    Conic { through: Vec<(usize, i64)> },
    /// A cubic fiber component given directly by its class.
    Cubic { class: Box<DivisorClass> },
}

/// Role a negative curve plays on a rational elliptic surface: every
/// negative curve is a section ((-1)-curve) or a reducible-fiber component
/// ((-2)-curve).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveRole {
    Section,
    FiberComponent,
    Other,
}

impl fmt::Display for CurveRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveRole::Section => write!(f, "section"),
            CurveRole::FiberComponent => write!(f, "fiber-component"),
            CurveRole::Other => write!(f, "other"),
        }
    }
}

/// Role determined by class arithmetic alone.
pub fn role_of(class: &DivisorClass) -> CurveRole {
    let d2 = class.self_intersection();
    let dk = class.intersect(&DivisorClass::canonical());
    if d2 == BigInt::from(-1) && dk == BigInt::from(-1) {
        CurveRole::Section
    } else if d2 == BigInt::from(-2) && dk.is_zero() {
        CurveRole::FiberComponent
    } else {
        CurveRole::Other
    }
}

/// A declared curve: display label, class, and derived role.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedCurve {
    pub label: String,
    pub class: DivisorClass,
    pub role: CurveRole,
}

impl NamedCurve {
    pub fn new(label: impl Into<String>, class: DivisorClass) -> Self {
        let role = role_of(&class);
        NamedCurve {
            label: label.into(),
            class,
            role,
        }
    }

    /// Curve with an explicitly asserted role, for models that declare
    /// roles rather than derive them. Validation checks the assertion.
    pub fn with_role(label: impl Into<String>, class: DivisorClass, role: CurveRole) -> Self {
        NamedCurve {
            label: label.into(),
            class,
            role,
        }
    }
}

/// Class of the strict transform of the exceptional divisor over a point:
/// `ei` minus the classes of the points immediately proximate to it. A leaf
/// of the forest gives a (-1)-curve (a section), an inner point a
/// (-2)-curve.
pub fn exceptional_component_class(forest: &BasePointForest, point: usize) -> DivisorClass {
    assert!((1..=9).contains(&point), "point index {point} out of range");
    let mut coeffs = [0i64; 10];
    coeffs[point] = -1;
    for child in forest.children_of(point) {
        coeffs[child] = 1;
    }
    DivisorClass::from_i64(coeffs)
}

fn check_through(
    forest: &BasePointForest,
    through: &[(usize, i64)],
) -> Result<[i64; 9], ModelError> {
    let mut mult = [0i64; 9];
    for &(p, m) in through {
        if !(1..=9).contains(&p) {
            return Err(ModelError::InvalidPoint(p));
        }
        if m < 1 {
            return Err(ModelError::InvalidSpec(format!(
                "multiplicity {m} at point {p} must be positive"
            )));
        }
        if mult[p - 1] != 0 {
            return Err(ModelError::InvalidSpec(format!(
                "point {p} listed more than once"
            )));
        }
        mult[p - 1] = m;
    }
    // Proximity inequality: the multiplicity at a point dominates the sum
    // over the points infinitely near it.
    for p in 1..=9 {
        let near_sum: i64 = forest.children_of(p).iter().map(|&c| mult[c - 1]).sum();
        if mult[p - 1] < near_sum {
            return Err(ModelError::InconsistentProximity(format!(
                "multiplicity {} at point {p} is less than the total {} at points \
                 infinitely near it",
                mult[p - 1],
                near_sum
            )));
        }
    }
    Ok(mult)
}

/// Class `d·l - Σ mi·ei` of the strict transform of a degree-`d` plane
/// curve through the assigned points, in the total-transform basis.
pub fn strict_transform_class(
    forest: &BasePointForest,
    degree: i64,
    through: &[(usize, i64)],
) -> Result<DivisorClass, ModelError> {
    let mult = check_through(forest, through)?;
    let mut coeffs = [0i64; 10];
    coeffs[0] = degree;
    coeffs[1..].copy_from_slice(&mult);
    Ok(DivisorClass::from_i64(coeffs))
}

/// Resolves any curve spec to its divisor class.
pub fn curve_class(forest: &BasePointForest, spec: &CurveSpec) -> Result<DivisorClass, ModelError> {
    match spec {
        CurveSpec::Exceptional { point } => {
            if !(1..=9).contains(point) {
                return Err(ModelError::InvalidPoint(*point));
            }
            Ok(exceptional_component_class(forest, *point))
        }
        CurveSpec::Line { through } => strict_transform_class(forest, 1, through),
        CurveSpec::Conic { through } => strict_transform_class(forest, 2, through),
        CurveSpec::Cubic { class } => Ok((**class).clone()),
    }
}

/// Membership of one declared reducible fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeclaredFiber {
    pub kodaira: KodairaType,
    /// Pairs (curve label, multiplicity).
    pub members: Vec<(String, i64)>,
}

/// A rational elliptic surface presented by blowup data.
#[derive(Debug, Clone)]
pub struct SurfaceModel {
    pub name: String,
    pub forest: BasePointForest,
    pub curves: Vec<NamedCurve>,
    pub config: FiberConfiguration,
    pub fibers: Vec<DeclaredFiber>,
    pub pencils: Vec<PlanePencil>,
}

/// Pairwise intersection numbers of a list of curves.
#[derive(Debug, Clone)]
pub struct CurveGraph {
    pub labels: Vec<String>,
    pub weights: Vec<Vec<BigInt>>,
}

impl CurveGraph {
    pub fn weight(&self, i: usize, j: usize) -> &BigInt {
        &self.weights[i][j]
    }
}

/// Builds the weighted intersection graph of the given curves. Distinct
/// integral curves meet nonnegatively, so a negative off-diagonal entry
/// means the declarations cannot both be honest curves.
pub fn intersection_graph(curves: &[&NamedCurve]) -> Result<CurveGraph, ModelError> {
    let n = curves.len();
    let mut weights = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            weights[i][j] = curves[i].class.intersect(&curves[j].class);
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if weights[i][j].is_negative() {
                return Err(ModelError::NegativeEdge(
                    curves[i].label.clone(),
                    curves[j].label.clone(),
                ));
            }
        }
    }
    Ok(CurveGraph {
        labels: curves.iter().map(|c| c.label.clone()).collect(),
        weights,
    })
}

/// One named check of the model validator.
#[derive(Debug, Clone, Serialize)]
pub struct ModelCheck {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

/// Validation report; failures are carried here, never raised.
#[derive(Debug, Clone, Serialize)]
pub struct ModelReport {
    pub model: String,
    pub valid: bool,
    pub checks: Vec<ModelCheck>,
    pub config: ConfigReport,
}

impl SurfaceModel {
    pub fn curve(&self, label: &str) -> Option<&NamedCurve> {
        self.curves.iter().find(|c| c.label == label)
    }

    /// All declared curves of negative self-intersection, in declaration
    /// order, each tagged section or fiber component.
    pub fn negative_curve_inventory(&self) -> Vec<&NamedCurve> {
        self.curves
            .iter()
            .filter(|c| c.class.self_intersection().is_negative())
            .collect()
    }

    /// Runs every model invariant and reports per-check results.
    pub fn validate(&self) -> ModelReport {
        let mut checks = Vec::new();
        let mut push = |name: &str, passed: bool, details: String| {
            checks.push(ModelCheck {
                name: name.to_string(),
                passed,
                details,
            });
        };

        // Unique labels.
        {
            let mut seen = BTreeMap::new();
            let mut dups = Vec::new();
            for c in &self.curves {
                if seen.insert(c.label.clone(), ()).is_some() {
                    dups.push(c.label.clone());
                }
            }
            push(
                "curve-labels-unique",
                dups.is_empty(),
                if dups.is_empty() {
                    format!("{} curves", self.curves.len())
                } else {
                    format!("duplicate labels: {}", dups.join(", "))
                },
            );
        }

        // Role/class consistency and genus zero for negative curves.
        {
            let mut bad = Vec::new();
            for c in &self.curves {
                let derived = role_of(&c.class);
                if c.role != derived {
                    bad.push(format!(
                        "{}: declared {} but class {} is {} (self-intersection {})",
                        c.label,
                        c.role,
                        c.class,
                        derived,
                        c.class.self_intersection()
                    ));
                }
                if matches!(c.role, CurveRole::Section | CurveRole::FiberComponent)
                    && !c.class.arithmetic_genus().is_zero()
                {
                    bad.push(format!("{}: negative curve with nonzero genus", c.label));
                }
            }
            push(
                "curve-invariants",
                bad.is_empty(),
                if bad.is_empty() {
                    "all declared roles match class arithmetic".into()
                } else {
                    bad.join("; ")
                },
            );
        }

        // Distinct curves pair nonnegatively.
        {
            let all: Vec<&NamedCurve> = self.curves.iter().collect();
            match intersection_graph(&all) {
                Ok(_) => push("pairwise-nonnegative", true, String::new()),
                Err(e) => push("pairwise-nonnegative", false, e.to_string()),
            }
        }

        // Configuration consistency.
        let config_report = self.config.validate();
        push(
            "config-consistency",
            config_report.is_valid(),
            config_report.problems.join("; "),
        );

        // Fiber coverage: declared fibers match the reducible configuration
        // entries one-to-one; members are fiber components used exactly once.
        {
            let mut problems = Vec::new();
            let mut reducible = self.config.reducible();
            for f in &self.fibers {
                if let Some(pos) = reducible.iter().position(|t| *t == f.kodaira) {
                    reducible.remove(pos);
                } else {
                    problems.push(format!(
                        "declared fiber {} has no matching reducible entry in the configuration",
                        f.kodaira
                    ));
                }
            }
            for t in reducible {
                problems.push(format!("reducible fiber {t} has no declared members"));
            }
            let mut used: BTreeMap<&str, usize> = BTreeMap::new();
            for f in &self.fibers {
                for (label, mult) in &f.members {
                    if *mult < 1 {
                        problems.push(format!(
                            "member {label} of {} has nonpositive multiplicity",
                            f.kodaira
                        ));
                    }
                    match self.curve(label) {
                        None => problems.push(format!(
                            "member {label} of {} is not a declared curve",
                            f.kodaira
                        )),
                        Some(c) => {
                            if role_of(&c.class) != CurveRole::FiberComponent {
                                problems.push(format!(
                                    "member {label} of {} is not a (-2)-curve",
                                    f.kodaira
                                ));
                            }
                            *used.entry(label.as_str()).or_insert(0) += 1;
                        }
                    }
                }
            }
            for (label, count) in &used {
                if *count > 1 {
                    problems.push(format!("curve {label} appears in {count} fibers"));
                }
            }
            for c in &self.curves {
                if role_of(&c.class) == CurveRole::FiberComponent
                    && !used.contains_key(c.label.as_str())
                {
                    problems.push(format!(
                        "fiber component {} belongs to no declared fiber",
                        c.label
                    ));
                }
            }
            push("fiber-coverage", problems.is_empty(), problems.join("; "));
        }

        // Each declared fiber sums to the anticanonical class.
        {
            let mut problems = Vec::new();
            for f in &self.fibers {
                let mut sum = DivisorClass::zero();
                for (label, mult) in &f.members {
                    if let Some(c) = self.curve(label) {
                        sum = &sum + &c.class.scale(*mult);
                    }
                }
                if sum != DivisorClass::anticanonical() {
                    problems.push(format!(
                        "{} members sum to {} instead of {}",
                        f.kodaira,
                        sum,
                        DivisorClass::anticanonical()
                    ));
                }
            }
            push(
                "fiber-classes-sum",
                problems.is_empty(),
                problems.join("; "),
            );
        }

        // Each declared fiber graph is isomorphic to the standard graph of
        // its tag (node self-intersections, multiplicities, edge weights).
        {
            let mut problems = Vec::new();
            for f in &self.fibers {
                match self.declared_fiber_matches(f) {
                    Ok(()) => {}
                    Err(msg) => problems.push(format!("{}: {msg}", f.kodaira)),
                }
            }
            push("fiber-graphs", problems.is_empty(), problems.join("; "));
        }

        // Sections meet each declared fiber once, at a simple component.
        {
            let mut problems = Vec::new();
            for s in &self.curves {
                if role_of(&s.class) != CurveRole::Section {
                    continue;
                }
                for f in &self.fibers {
                    let mut total = BigInt::zero();
                    let mut hits: Vec<(String, i64, BigInt)> = Vec::new();
                    for (label, mult) in &f.members {
                        if let Some(c) = self.curve(label) {
                            let p = s.class.intersect(&c.class);
                            if !p.is_zero() {
                                hits.push((label.clone(), *mult, p.clone()));
                            }
                            total += BigInt::from(*mult) * p;
                        }
                    }
                    if total != BigInt::from(1) {
                        problems.push(format!(
                            "section {} meets fiber {} with total {total}, expected 1",
                            s.label, f.kodaira
                        ));
                    } else if hits.len() != 1 || hits[0].1 != 1 || hits[0].2 != BigInt::from(1) {
                        problems.push(format!(
                            "section {} must meet fiber {} at a single multiplicity-1 \
                             component",
                            s.label, f.kodaira
                        ));
                    }
                }
            }
            push(
                "section-incidence",
                problems.is_empty(),
                problems.join("; "),
            );
        }

        let valid = checks.iter().all(|c| c.passed) && config_report.is_valid();
        ModelReport {
            model: self.name.clone(),
            valid,
            checks,
            config: config_report,
        }
    }

    fn declared_fiber_matches(&self, f: &DeclaredFiber) -> Result<(), String> {
        let reference = build_fiber_graph(&f.kodaira).map_err(|e| e.to_string())?;
        let mut curves = Vec::new();
        for (label, mult) in &f.members {
            let c = self
                .curve(label)
                .ok_or_else(|| format!("unknown member {label}"))?;
            curves.push((c, *mult));
        }
        if curves.len() != reference.node_count() {
            return Err(format!(
                "{} members declared, {} components expected",
                curves.len(),
                reference.node_count()
            ));
        }
        let n = curves.len();
        let attrs: Vec<(i64, i64)> = curves
            .iter()
            .map(|(c, m)| {
                let s = c.class.self_intersection().try_into().unwrap_or(i64::MIN);
                (s, *m)
            })
            .collect();
        let mut weights = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    weights[i][j] = curves[i]
                        .0
                        .class
                        .intersect(&curves[j].0.class)
                        .try_into()
                        .unwrap_or(i64::MIN);
                }
            }
        }
        let ref_attrs: Vec<(i64, i64)> = reference
            .nodes()
            .iter()
            .map(|nd| (nd.self_intersection, nd.multiplicity))
            .collect();
        let mut ref_weights = vec![vec![0i64; n]; n];
        for (i, row) in ref_weights.iter_mut().enumerate() {
            for (j, w) in row.iter_mut().enumerate() {
                if i != j {
                    *w = reference.edge_weight(i, j);
                }
            }
        }
        if weighted_graphs_isomorphic(&attrs, &weights, &ref_attrs, &ref_weights) {
            Ok(())
        } else {
            Err("intersection graph does not match the standard fiber graph".into())
        }
    }
}

/// Node attributes plus the sorted multiset of (edge weight, neighbour
/// attributes); nodes can only match nodes with equal signatures.
type NodeSignature = ((i64, i64), Vec<(i64, i64, i64)>);

struct IsoSearch<'a> {
    sig_a: Vec<NodeSignature>,
    sig_b: Vec<NodeSignature>,
    weights_a: &'a [Vec<i64>],
    weights_b: &'a [Vec<i64>],
}

impl IsoSearch<'_> {
    fn backtrack(&self, i: usize, assignment: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let n = self.sig_a.len();
        if i == n {
            return true;
        }
        for cand in 0..n {
            if used[cand] || self.sig_a[i] != self.sig_b[cand] {
                continue;
            }
            let consistent =
                (0..i).all(|j| self.weights_a[i][j] == self.weights_b[cand][assignment[j]]);
            if !consistent {
                continue;
            }
            assignment.push(cand);
            used[cand] = true;
            if self.backtrack(i + 1, assignment, used) {
                return true;
            }
            assignment.pop();
            used[cand] = false;
        }
        false
    }
}

/// Exact isomorphism of small node-attributed weighted graphs.
pub fn weighted_graphs_isomorphic(
    attrs_a: &[(i64, i64)],
    weights_a: &[Vec<i64>],
    attrs_b: &[(i64, i64)],
    weights_b: &[Vec<i64>],
) -> bool {
    let n = attrs_a.len();
    if attrs_b.len() != n {
        return false;
    }
    let signature = |attrs: &[(i64, i64)], weights: &[Vec<i64>], i: usize| -> NodeSignature {
        let mut sig: Vec<(i64, i64, i64)> = (0..n)
            .filter(|&j| j != i && weights[i][j] != 0)
            .map(|j| (weights[i][j], attrs[j].0, attrs[j].1))
            .collect();
        sig.sort_unstable();
        (attrs[i], sig)
    };
    let sig_a: Vec<_> = (0..n).map(|i| signature(attrs_a, weights_a, i)).collect();
    let sig_b: Vec<_> = (0..n).map(|i| signature(attrs_b, weights_b, i)).collect();
    {
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
    }
    let search = IsoSearch {
        sig_a,
        sig_b,
        weights_a,
        weights_b,
    };
    search.backtrack(0, &mut Vec::with_capacity(n), &mut vec![false; n])
}

// ---------------------------------------------------------------------------
// Model file schema.
//
// {
//   "name": "optional display name",
//   "points": [{"id": 1, "near": null}, {"id": 2, "near": 1}, ...],
//   "curves": [
//     {"label": "E2", "kind": "exc", "point": 2},
//     {"label": "L", "kind": "line", "through": [[1,1],[2,1],[3,1]]},
//     {"label": "Q", "kind": "conic", "through": [[1,1],[2,1],[3,1],[4,1]]},
//     {"label": "C", "kind": "cubic", "class": [3,1,1,1,1,1,1,1,2,0]}
//   ],
//   "config": ["II*", "II"],
//   "fibers": {"II*": [["E1",2],["E2",4],...]},
//   "pencils": [{"kind": "lines", "base": [[1,1]]}]
// }
//
// Unknown fields are rejected. When a configuration contains several
// reducible fibers of the same type, fiber keys take a `#k` suffix
// ("I3#1", "I3#2") to keep the map single-valued.
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    #[serde(default)]
    name: Option<String>,
    points: Vec<PointEntry>,
    curves: Vec<CurveEntry>,
    config: Vec<String>,
    #[serde(default)]
    fibers: BTreeMap<String, Vec<(String, i64)>>,
    #[serde(default)]
    pencils: Vec<PencilEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointEntry {
    id: usize,
    near: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveEntry {
    label: String,
    kind: String,
    #[serde(default)]
    point: Option<usize>,
    #[serde(default)]
    through: Option<Vec<(usize, i64)>>,
    #[serde(default)]
    class: Option<DivisorClass>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PencilEntry {
    kind: String,
    base: Vec<(usize, i64)>,
}

impl SurfaceModel {
    pub fn from_json(input: &str) -> Result<SurfaceModel, ModelError> {
        let file: ModelFile =
            serde_json::from_str(input).map_err(|e| ModelError::Schema(e.to_string()))?;

        if file.points.len() != 9 {
            return Err(ModelError::Schema(format!(
                "expected exactly 9 points, found {}",
                file.points.len()
            )));
        }
        let mut parent = [None; 9];
        let mut seen = [false; 9];
        for p in &file.points {
            if !(1..=9).contains(&p.id) {
                return Err(ModelError::InvalidPoint(p.id));
            }
            if seen[p.id - 1] {
                return Err(ModelError::Schema(format!("point {} listed twice", p.id)));
            }
            seen[p.id - 1] = true;
            parent[p.id - 1] = p.near;
        }
        let forest = BasePointForest::new(parent)?;

        let mut curves = Vec::new();
        for entry in &file.curves {
            let spec = match entry.kind.as_str() {
                "exc" => CurveSpec::Exceptional {
                    point: entry.point.ok_or_else(|| {
                        ModelError::Schema(format!("curve {}: missing `point`", entry.label))
                    })?,
                },
                "line" => CurveSpec::Line {
                    through: entry.through.clone().ok_or_else(|| {
                        ModelError::Schema(format!("curve {}: missing `through`", entry.label))
                    })?,
                },
                "conic" => CurveSpec::Conic {
                    through: entry.through.clone().ok_or_else(|| {
                        ModelError::Schema(format!("curve {}: missing `through`", entry.label))
                    })?,
                },
                "cubic" => CurveSpec::Cubic {
                    class: Box::new(entry.class.clone().ok_or_else(|| {
                        ModelError::Schema(format!("curve {}: missing `class`", entry.label))
                    })?),
                },
                other => {
                    return Err(ModelError::Schema(format!(
                        "curve {}: unknown kind `{other}`",
                        entry.label
                    )))
                }
            };
            let class = curve_class(&forest, &spec)?;
            curves.push(NamedCurve::new(entry.label.clone(), class));
        }

        let config =
            FiberConfiguration::parse(&file.config.iter().map(String::as_str).collect::<Vec<_>>())
                .map_err(|e| ModelError::Schema(e.to_string()))?;

        let mut fibers = Vec::new();
        for (key, members) in &file.fibers {
            let tag = key.split('#').next().unwrap_or(key);
            let kodaira: KodairaType = tag
                .parse()
                .map_err(|e: crate::kodaira::KodairaError| ModelError::Schema(e.to_string()))?;
            fibers.push(DeclaredFiber {
                kodaira,
                members: members.clone(),
            });
        }

        let mut pencils = Vec::new();
        for p in &file.pencils {
            let kind = match p.kind.as_str() {
                "lines" => PencilKind::Lines,
                "conics" => PencilKind::Conics,
                other => return Err(ModelError::Schema(format!("unknown pencil kind `{other}`"))),
            };
            pencils.push(PlanePencil {
                kind,
                base: p.base.clone(),
            });
        }

        Ok(SurfaceModel {
            name: file.name.unwrap_or_else(|| "unnamed".into()),
            forest,
            curves,
            config,
            fibers,
            pencils,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn chain_forest() -> BasePointForest {
        // p1 <- p2 <- ... <- p9, each infinitely near its predecessor.
        let mut parent = [None; 9];
        for (i, p) in parent.iter_mut().enumerate().skip(1) {
            *p = Some(i);
        }
        BasePointForest::new(parent).unwrap()
    }

    #[test]
    fn exceptional_classes_on_a_chain() {
        let f = chain_forest();
        let e9 = exceptional_component_class(&f, 9);
        assert_eq!(e9, DivisorClass::exceptional(9));
        assert_eq!(e9.self_intersection(), (-1).into());
        assert_eq!(role_of(&e9), CurveRole::Section);

        let e2 = exceptional_component_class(&f, 2);
        assert_eq!(e2, DivisorClass::from_i64([0, 0, -1, 1, 0, 0, 0, 0, 0, 0]));
        assert_eq!(e2.self_intersection(), (-2).into());
        assert_eq!(role_of(&e2), CurveRole::FiberComponent);
    }

    #[test]
    fn exceptional_class_of_a_plane_point() {
        let f = BasePointForest::plane_points();
        let e1 = exceptional_component_class(&f, 1);
        assert_eq!(e1, DivisorClass::exceptional(1));
        assert_eq!(role_of(&e1), CurveRole::Section);
    }

    #[test]
    fn strict_transforms() {
        let plane = BasePointForest::plane_points();
        let line = strict_transform_class(&plane, 1, &[(1, 1), (2, 1)]).unwrap();
        assert_eq!(line, DivisorClass::from_i64([1, 1, 1, 0, 0, 0, 0, 0, 0, 0]));
        assert_eq!(role_of(&line), CurveRole::Section);

        let chain = chain_forest();
        let tangent = strict_transform_class(&chain, 1, &[(1, 1), (2, 1), (3, 1)]).unwrap();
        assert_eq!(tangent.self_intersection(), (-2).into());
        assert_eq!(role_of(&tangent), CurveRole::FiberComponent);

        let conic = strict_transform_class(&plane, 2, &[(1, 1), (2, 1), (3, 1), (4, 1)]).unwrap();
        assert_eq!(conic.self_intersection(), 0.into());
        assert!(conic.arithmetic_genus().is_zero());
        assert_eq!(role_of(&conic), CurveRole::Other);
    }

    #[test]
    fn proximity_violations_are_rejected() {
        let chain = chain_forest();
        // A curve through p2 must pass through p1.
        let err = strict_transform_class(&chain, 1, &[(2, 1)]);
        assert!(matches!(err, Err(ModelError::InconsistentProximity(_))));
        let err = strict_transform_class(&chain, 2, &[(1, 1), (2, 2)]);
        assert!(matches!(err, Err(ModelError::InconsistentProximity(_))));
        assert!(strict_transform_class(&chain, 1, &[(11, 1)]).is_err());
        assert!(strict_transform_class(&chain, 1, &[(1, 0)]).is_err());
    }

    #[test]
    fn forest_rejects_forward_references() {
        let mut parent = [None; 9];
        parent[0] = Some(2);
        assert!(BasePointForest::new(parent).is_err());
    }

    #[test]
    fn intersection_graph_weights() {
        let e9 = NamedCurve::new("E9", DivisorClass::exceptional(9));
        let e8 = NamedCurve::new(
            "E8",
            DivisorClass::from_i64([0, 0, 0, 0, 0, 0, 0, 0, -1, 1]),
        );
        let g = intersection_graph(&[&e9, &e8]).unwrap();
        assert_eq!(g.weight(0, 1), &BigInt::from(1));

        let l = NamedCurve::new("L", DivisorClass::from_i64([1, 1, 1, 0, 0, 0, 0, 0, 0, 0]));
        let e2 = NamedCurve::new("E2", DivisorClass::exceptional(2));
        let g = intersection_graph(&[&l, &e2]).unwrap();
        assert_eq!(g.weight(0, 1), &BigInt::from(1));

        let e1 = NamedCurve::new("E1", DivisorClass::exceptional(1));
        let g = intersection_graph(&[&e1, &e2]).unwrap();
        assert_eq!(g.weight(0, 1), &BigInt::from(0));

        // Two copies of the same (-1)-class cannot both be curves.
        let dup = NamedCurve::new("E9b", DivisorClass::exceptional(9));
        assert!(matches!(
            intersection_graph(&[&e9, &dup]),
            Err(ModelError::NegativeEdge(_, _))
        ));
    }

    #[test]
    fn corpus_models_validate() {
        for fixture in corpus::fixtures() {
            let model = SurfaceModel::from_json(fixture.json).unwrap();
            let report = model.validate();
            assert!(
                report.valid,
                "fixture {} failed validation: {:?}",
                fixture.name,
                report
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn chain_model_inventory() {
        let model = SurfaceModel::from_json(corpus::fixtures()[0].json).unwrap();
        let inv = model.negative_curve_inventory();
        assert_eq!(inv.len(), 10);
        let sections: Vec<_> = inv
            .iter()
            .filter(|c| c.role == CurveRole::Section)
            .map(|c| c.label.as_str())
            .collect();
        assert_eq!(sections, vec!["E9"]);
        assert_eq!(
            inv.iter()
                .filter(|c| c.role == CurveRole::FiberComponent)
                .count(),
            9
        );
    }

    #[test]
    fn generic_model_inventory_is_all_sections() {
        let model = SurfaceModel::from_json(corpus::fixtures()[1].json).unwrap();
        let inv = model.negative_curve_inventory();
        assert_eq!(inv.len(), 17);
        assert!(inv.iter().all(|c| c.role == CurveRole::Section));

        let empty = SurfaceModel {
            name: "empty".into(),
            forest: BasePointForest::plane_points(),
            curves: vec![],
            config: model.config.clone(),
            fibers: vec![],
            pencils: vec![],
        };
        assert!(empty.negative_curve_inventory().is_empty());
    }

    #[test]
    fn wrong_role_declaration_fails_validation() {
        let model = SurfaceModel {
            name: "bad-role".into(),
            forest: BasePointForest::plane_points(),
            curves: vec![NamedCurve::with_role(
                "S",
                DivisorClass::from_i64([0, 0, -1, 1, 0, 0, 0, 0, 0, 0]),
                CurveRole::Section,
            )],
            config: FiberConfiguration::parse(&[
                "II", "I1", "I1", "I1", "I1", "I1", "I1", "I1", "I1", "I1", "I1",
            ])
            .unwrap(),
            fibers: vec![],
            pencils: vec![],
        };
        let report = model.validate();
        assert!(!report.valid);
        let check = report
            .checks
            .iter()
            .find(|c| c.name == "curve-invariants")
            .unwrap();
        assert!(!check.passed);
        assert!(check.details.contains("self-intersection -2"));
    }

    #[test]
    fn perturbed_fiber_declaration_fails_graph_check() {
        // Swap two multiplicities in the II* membership of the chain model;
        // the class sum and the graph shape both break.
        let mut model = SurfaceModel::from_json(corpus::fixtures()[0].json).unwrap();
        let fiber = &mut model.fibers[0];
        let (a, b) = (fiber.members[0].1, fiber.members[7].1);
        fiber.members[0].1 = b;
        fiber.members[7].1 = a;
        let report = model.validate();
        assert!(!report.valid);
        assert!(
            !report
                .checks
                .iter()
                .find(|c| c.name == "fiber-graphs")
                .unwrap()
                .passed
        );
        assert!(
            !report
                .checks
                .iter()
                .find(|c| c.name == "fiber-classes-sum")
                .unwrap()
                .passed
        );
    }

    #[test]
    fn graph_isomorphism_distinguishes_shapes() {
        // Triangle vs. path on three (-2, 1) nodes.
        let attrs = vec![(-2, 1); 3];
        let triangle = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
        let path = vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]];
        assert!(weighted_graphs_isomorphic(
            &attrs, &triangle, &attrs, &triangle
        ));
        assert!(!weighted_graphs_isomorphic(
            &attrs, &triangle, &attrs, &path
        ));
        // Path relabelled is still a path.
        let path2 = vec![vec![0, 0, 1], vec![0, 0, 1], vec![1, 1, 0]];
        assert!(weighted_graphs_isomorphic(&attrs, &path, &attrs, &path2));
        // Edge weights matter.
        let doubled = vec![vec![0, 2, 0], vec![2, 0, 1], vec![0, 1, 0]];
        assert!(!weighted_graphs_isomorphic(&attrs, &path, &attrs, &doubled));
    }

    #[test]
    fn schema_rejects_unknown_fields() {
        let bad = r#"{"points": [], "curves": [], "config": [], "extra": 1}"#;
        assert!(matches!(
            SurfaceModel::from_json(bad),
            Err(ModelError::Schema(_))
        ));
    }
}
