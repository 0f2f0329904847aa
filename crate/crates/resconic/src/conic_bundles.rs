//! Conic classes, the five-type classification of singular conic-bundle
//! fibers, and exhaustive enumeration over a surface model.
//!
//! A conic class is a nef class `D` with `D² = 0` and `D·(-K) = 2`; such
//! classes correspond bijectively to conic bundles on the surface. A
//! singular fiber of a conic bundle is connected, supported on negative
//! curves, and carries two sections counted with multiplicity: either two
//! distinct sections (types `A2`, `An`) or one section doubled (types `D3`,
//! `Dm`). Together with `D·C = 0` on the support this pins the shape down to
//! five templates, and template matching over the declared inventory is a
//! complete enumeration strategy because multiplicities never exceed 2.
//!
//! Nefness is decidable only against the declared curve inventory; every
//! positive answer is relative to it.

use crate::ns_lattice::DivisorClass;
use crate::surface_model::{CurveRole, NamedCurve, SurfaceModel};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConicError {
    #[error("class has nonzero self-intersection {0}")]
    NotSquareZero(BigInt),
    #[error("class pairs with -K to {0}, expected 2")]
    WrongAnticanonicalDegree(BigInt),
    #[error("class pairs negatively with inventory curve `{0}`")]
    NotNefAgainstInventory(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiberError {
    #[error("not a conic-bundle fiber: {0}")]
    NotAConicFiber(String),
}

fn reject(reason: impl Into<String>) -> FiberError {
    FiberError::NotAConicFiber(reason.into())
}

/// A certified conic class together with the inventory it was checked
/// against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConicClass {
    pub class: DivisorClass,
    /// Labels of the curves the nef condition was verified against.
    pub nef_evidence: Vec<String>,
}

/// Shape of a conic-bundle fiber.
///
/// `Type0` is the smooth shape (one irreducible genus-0 curve of square 0);
/// the four reducible shapes store their node count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberType {
    Type0,
    A2,
    An(u32),
    D3,
    Dm(u32),
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberType::Type0 => write!(f, "0"),
            FiberType::A2 => write!(f, "A2"),
            FiberType::An(n) => write!(f, "A{n}"),
            FiberType::D3 => write!(f, "D3"),
            FiberType::Dm(m) => write!(f, "D{m}"),
        }
    }
}

impl Serialize for FiberType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A classified singular fiber: support with multiplicities, its type, and
/// the class of the weighted sum. Serializes as
/// `{"type":"D9","support":[["E9",2],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularConicFiber {
    #[serde(rename = "type")]
    pub fiber_type: FiberType,
    pub support: Vec<(String, i64)>,
    #[serde(skip)]
    pub class: DivisorClass,
}

impl SingularConicFiber {
    /// Support as a sorted multiset, the canonical identity of the fiber.
    pub fn support_key(&self) -> Vec<(String, i64)> {
        let mut key = self.support.clone();
        key.sort();
        key
    }
}

/// A conic class with all singular fibers found over the inventory.
/// Serializes as `{"class":[1,1,0,...,0],"fibers":[...]}`.
#[derive(Debug, Clone)]
pub struct ConicBundle {
    pub class: ConicClass,
    pub fibers: Vec<SingularConicFiber>,
}

impl Serialize for ConicBundle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ConicBundle", 2)?;
        st.serialize_field("class", &self.class.class)?;
        st.serialize_field("fibers", &self.fibers)?;
        st.end()
    }
}

/// `D·C >= 0` for every curve in the inventory.
pub fn is_nef_against(class: &DivisorClass, inventory: &[&NamedCurve]) -> bool {
    nef_violation(class, inventory).is_none()
}

/// First inventory curve pairing negatively with the class, if any.
pub fn nef_violation<'a>(
    class: &DivisorClass,
    inventory: &[&'a NamedCurve],
) -> Option<&'a NamedCurve> {
    inventory
        .iter()
        .find(|c| class.intersect(&c.class).is_negative())
        .copied()
}

/// Checks the full conic-class conditions against a model: square zero,
/// anticanonical degree two, and nefness relative to the declared negative
/// curves. A certified class always has `χ(D) = 2`, the pencil dimension.
pub fn verify_conic_class(
    class: &DivisorClass,
    model: &SurfaceModel,
) -> Result<ConicClass, ConicError> {
    let square = class.self_intersection();
    if !square.is_zero() {
        return Err(ConicError::NotSquareZero(square));
    }
    let deg = class.intersect(&DivisorClass::anticanonical());
    if deg != BigInt::from(2) {
        return Err(ConicError::WrongAnticanonicalDegree(deg));
    }
    let inventory = model.negative_curve_inventory();
    if let Some(c) = nef_violation(class, &inventory) {
        return Err(ConicError::NotNefAgainstInventory(c.label.clone()));
    }
    assert_eq!(class.riemann_roch_chi(), BigInt::from(2));
    Ok(ConicClass {
        class: class.clone(),
        nef_evidence: inventory.iter().map(|c| c.label.clone()).collect(),
    })
}

/// Number of distinct support curves pairing positively with the one at
/// `node`.
pub fn neighbour_count(support: &[(&NamedCurve, i64)], node: usize) -> usize {
    support
        .iter()
        .enumerate()
        .filter(|(j, (c, _))| *j != node && support[node].0.class.intersect(&c.class).is_positive())
        .count()
}

struct SupportData {
    pairings: Vec<Vec<BigInt>>,
    roles: Vec<CurveRole>,
}

fn support_data(support: &[(&NamedCurve, i64)]) -> Result<SupportData, FiberError> {
    if support.is_empty() {
        return Err(reject("empty support"));
    }
    for (c, m) in support {
        if *m < 1 {
            return Err(reject(format!(
                "curve {} carries nonpositive multiplicity {m}",
                c.label
            )));
        }
    }
    let n = support.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if support[i].0.label == support[j].0.label || support[i].0.class == support[j].0.class
            {
                return Err(reject(format!(
                    "support lists curve {} twice",
                    support[i].0.label
                )));
            }
        }
    }
    let mut pairings = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            pairings[i][j] = support[i].0.class.intersect(&support[j].0.class);
            if i != j && pairings[i][j].is_negative() {
                return Err(reject(format!(
                    "curves {} and {} pair negatively",
                    support[i].0.label, support[j].0.label
                )));
            }
        }
    }
    let roles = support
        .iter()
        .map(|(c, _)| crate::surface_model::role_of(&c.class))
        .collect();
    Ok(SupportData { pairings, roles })
}

fn is_connected_support(pairings: &[Vec<BigInt>]) -> bool {
    let n = pairings.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if j != i && !seen[j] && pairings[i][j].is_positive() {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Classifies a supported divisor `Σ mult·curve` into one of the five
/// conic-bundle fiber shapes, or explains why it fits none.
///
/// The templates:
/// - type `0`: one curve, multiplicity 1, square 0, genus 0, `D·(-K) = 2`;
/// - `A2`: two distinct sections meeting once;
/// - `An` (`n >= 3`): a chain `P, C1, ..., Ck, P'` with section ends,
///   (-2)-curve interior, all multiplicities 1, consecutive pairings 1 and
///   every other pairing 0;
/// - `D3`: `2P + C1 + C2`, the two (-2)-curves meeting the section once
///   each and not each other;
/// - `Dm` (`m >= 4`): `2P + 2C1 + ... + 2Cl + C(l+1) + C(l+2)`, a doubled
///   chain from the section ending in a fork of two disjoint simple
///   (-2)-curves.
///
/// On success the divisor provably satisfies `D·C = 0` for all support
/// curves and `D·(-K) = 2`; both are re-verified here.
pub fn classify_fiber(support: &[(&NamedCurve, i64)]) -> Result<FiberType, FiberError> {
    let data = support_data(support)?;
    let n = support.len();
    let one = BigInt::from(1);

    if !is_connected_support(&data.pairings) {
        return Err(reject("support graph is disconnected"));
    }

    let fiber_type = if n == 1 {
        let (c, m) = &support[0];
        if *m != 1 {
            return Err(reject("a smooth fiber has multiplicity 1"));
        }
        if !c.class.self_intersection().is_zero() {
            return Err(reject(format!(
                "single curve has self-intersection {}, expected 0",
                c.class.self_intersection()
            )));
        }
        if c.class.intersect(&DivisorClass::anticanonical()) != BigInt::from(2) {
            return Err(reject("single curve does not have anticanonical degree 2"));
        }
        if !c.class.arithmetic_genus().is_zero() {
            return Err(reject("single curve does not have genus 0"));
        }
        FiberType::Type0
    } else {
        let sections: Vec<usize> = (0..n)
            .filter(|&i| data.roles[i] == CurveRole::Section)
            .collect();
        let interior: Vec<usize> = (0..n)
            .filter(|&i| data.roles[i] == CurveRole::FiberComponent)
            .collect();
        if sections.len() + interior.len() != n {
            let bad = (0..n).find(|&i| data.roles[i] == CurveRole::Other).unwrap();
            return Err(reject(format!(
                "curve {} is neither a section nor a (-2)-curve \
                 (self-intersection {})",
                support[bad].0.label,
                support[bad].0.class.self_intersection()
            )));
        }

        let doubled: Vec<usize> = (0..n).filter(|&i| support[i].1 == 2).collect();
        let simple: Vec<usize> = (0..n).filter(|&i| support[i].1 == 1).collect();
        if doubled.len() + simple.len() != n {
            return Err(reject("multiplicities must be 1 or 2"));
        }

        match sections.len() {
            2 => {
                // A-types: two distinct sections, everything reduced.
                if !doubled.is_empty() {
                    return Err(reject("a fiber with two distinct sections is reduced"));
                }
                if n == 2 {
                    if data.pairings[0][1] != one {
                        return Err(reject(format!(
                            "the two sections meet with multiplicity {}, expected 1",
                            data.pairings[0][1]
                        )));
                    }
                    FiberType::A2
                } else {
                    classify_chain(support, &data, &sections, &interior)?
                }
            }
            1 => {
                // D-types: one section, doubled.
                let p = sections[0];
                if support[p].1 != 2 {
                    return Err(reject("the unique section must carry multiplicity 2"));
                }
                classify_fork(support, &data, p)?
            }
            k => {
                return Err(reject(format!(
                    "support contains {k} sections, expected 1 or 2"
                )));
            }
        }
    };

    // The shape conditions force D·C = 0 on the support and D·(-K) = 2;
    // re-verify both on the assembled class.
    let class = fiber_class(support);
    for (c, _) in support {
        if !class.intersect(&c.class).is_zero() {
            return Err(reject(format!(
                "assembled class pairs nontrivially with support curve {}",
                c.label
            )));
        }
    }
    if class.intersect(&DivisorClass::anticanonical()) != BigInt::from(2) {
        return Err(reject(
            "assembled class does not have anticanonical degree 2",
        ));
    }
    Ok(fiber_type)
}

fn classify_chain(
    support: &[(&NamedCurve, i64)],
    data: &SupportData,
    sections: &[usize],
    interior: &[usize],
) -> Result<FiberType, FiberError> {
    let n = support.len();
    let one = BigInt::from(1);
    // Walk the chain from one section end; every step must be the unique
    // unvisited neighbour, every pairing along the way exactly 1.
    let start = sections[0];
    let goal = sections[1];
    if data.pairings[start][goal].is_positive() {
        return Err(reject(
            "the sections of a chain of length >= 3 must not meet",
        ));
    }
    let mut order = vec![start];
    let mut visited = vec![false; n];
    visited[start] = true;
    let mut current = start;
    loop {
        let next: Vec<usize> = (0..n)
            .filter(|&j| !visited[j] && data.pairings[current][j].is_positive())
            .collect();
        if next.len() != 1 {
            return Err(reject(format!(
                "curve {} has {} unvisited neighbours, chain expects 1",
                support[current].0.label,
                next.len()
            )));
        }
        let j = next[0];
        if data.pairings[current][j] != one {
            return Err(reject(format!(
                "chain pairing {}·{} is {}, expected 1",
                support[current].0.label, support[j].0.label, data.pairings[current][j]
            )));
        }
        visited[j] = true;
        order.push(j);
        current = j;
        if j == goal {
            break;
        }
        if order.len() > n {
            return Err(reject("chain walk failed to terminate"));
        }
    }
    if order.len() != n {
        return Err(reject("support is not a single chain"));
    }
    // Interior nodes must be the (-2)-curves and must not meet anything
    // besides their two chain neighbours.
    for (pos, &i) in order.iter().enumerate() {
        for (qos, &j) in order.iter().enumerate() {
            if qos > pos + 1 && data.pairings[i][j].is_positive() {
                return Err(reject(format!(
                    "chord {}·{} breaks the chain shape",
                    support[i].0.label, support[j].0.label
                )));
            }
        }
    }
    if interior.len() != n - 2 {
        return Err(reject("chain interior must consist of (-2)-curves"));
    }
    Ok(FiberType::An(n as u32))
}

fn classify_fork(
    support: &[(&NamedCurve, i64)],
    data: &SupportData,
    p: usize,
) -> Result<FiberType, FiberError> {
    let n = support.len();
    let one = BigInt::from(1);
    if n == 3 {
        // D3: the section meets each simple (-2)-curve once; they are
        // disjoint from each other.
        let others: Vec<usize> = (0..n).filter(|&i| i != p).collect();
        let (c1, c2) = (others[0], others[1]);
        if support[c1].1 != 1 || support[c2].1 != 1 {
            return Err(reject("the two (-2)-curves of a D3 fiber are simple"));
        }
        if data.pairings[p][c1] != one || data.pairings[p][c2] != one {
            return Err(reject("each (-2)-curve must meet the section exactly once"));
        }
        if !data.pairings[c1][c2].is_zero() {
            return Err(reject("the two (-2)-curves of a D3 fiber must not meet"));
        }
        return Ok(FiberType::D3);
    }
    if n < 4 {
        return Err(reject("a doubled section needs two or more (-2)-curves"));
    }
    // Dm: doubled chain P, C1, ..., Cl followed by a fork of two simple
    // curves; l = n - 3 >= 1.
    let mut order = vec![p];
    let mut visited = vec![false; n];
    visited[p] = true;
    let mut current = p;
    for _ in 0..(n - 3) {
        let next: Vec<usize> = (0..n)
            .filter(|&j| !visited[j] && data.pairings[current][j].is_positive())
            .collect();
        if next.len() != 1 {
            return Err(reject(format!(
                "curve {} has {} unvisited neighbours, doubled chain expects 1",
                support[current].0.label,
                next.len()
            )));
        }
        let j = next[0];
        if support[j].1 != 2 {
            return Err(reject(format!(
                "chain curve {} must carry multiplicity 2",
                support[j].0.label
            )));
        }
        if data.pairings[current][j] != one {
            return Err(reject("doubled chain pairings must be exactly 1"));
        }
        visited[j] = true;
        order.push(j);
        current = j;
    }
    let fork: Vec<usize> = (0..n).filter(|&j| !visited[j]).collect();
    if fork.len() != 2 {
        return Err(reject("expected exactly two fork curves"));
    }
    let (f1, f2) = (fork[0], fork[1]);
    for &f in &[f1, f2] {
        if support[f].1 != 1 {
            return Err(reject("fork curves carry multiplicity 1"));
        }
        if data.pairings[current][f] != one {
            return Err(reject("each fork curve meets the chain end exactly once"));
        }
        // Fork curves are extremities: no contact with the earlier chain.
        for &c in order.iter().take(order.len() - 1) {
            if data.pairings[f][c].is_positive() {
                return Err(reject(format!(
                    "fork curve {} meets chain curve {}",
                    support[f].0.label, support[c].0.label
                )));
            }
        }
    }
    if !data.pairings[f1][f2].is_zero() {
        return Err(reject("the two fork curves must not meet"));
    }
    // No chords along the doubled chain.
    for (pos, &i) in order.iter().enumerate() {
        for (qos, &j) in order.iter().enumerate() {
            if qos > pos + 1 && data.pairings[i][j].is_positive() {
                return Err(reject(format!(
                    "chord {}·{} breaks the doubled chain",
                    support[i].0.label, support[j].0.label
                )));
            }
        }
    }
    Ok(FiberType::Dm(n as u32))
}

/// Weighted class sum of a support list.
pub fn fiber_class(support: &[(&NamedCurve, i64)]) -> DivisorClass {
    let mut sum = DivisorClass::zero();
    for (c, m) in support {
        sum = &sum + &c.class.scale(*m);
    }
    sum
}

fn rank_of(t: &FiberType) -> (u8, u32) {
    match t {
        FiberType::Type0 => (0, 0),
        FiberType::A2 => (1, 2),
        FiberType::An(n) => (1, *n),
        FiberType::D3 => (2, 3),
        FiberType::Dm(m) => (2, *m),
    }
}

fn make_fiber(fiber_type: FiberType, ordered: Vec<(&NamedCurve, i64)>) -> SingularConicFiber {
    let class = fiber_class(&ordered);
    SingularConicFiber {
        fiber_type,
        support: ordered
            .into_iter()
            .map(|(c, m)| (c.label.clone(), m))
            .collect(),
        class,
    }
}

/// Canonical support order per shape: A2 sorted by label, chains from the
/// lexicographically smaller section end, D-types section first then chain
/// then fork sorted by label.
fn canonical_a2<'a>(p: &'a NamedCurve, q: &'a NamedCurve) -> Vec<(&'a NamedCurve, i64)> {
    let mut v = vec![(p, 1), (q, 1)];
    v.sort_by(|a, b| a.0.label.cmp(&b.0.label));
    v
}

struct Enumerator<'a> {
    curves: Vec<&'a NamedCurve>,
    pairings: Vec<Vec<BigInt>>,
    sections: Vec<usize>,
    components: Vec<usize>,
}

impl<'a> Enumerator<'a> {
    fn new(curves: Vec<&'a NamedCurve>) -> Self {
        let n = curves.len();
        let mut pairings = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                pairings[i][j] = curves[i].class.intersect(&curves[j].class);
            }
        }
        let sections = (0..n)
            .filter(|&i| crate::surface_model::role_of(&curves[i].class) == CurveRole::Section)
            .collect();
        let components = (0..n)
            .filter(|&i| {
                crate::surface_model::role_of(&curves[i].class) == CurveRole::FiberComponent
            })
            .collect();
        Enumerator {
            curves,
            pairings,
            sections,
            components,
        }
    }

    fn one(&self, i: usize, j: usize) -> bool {
        self.pairings[i][j] == BigInt::from(1)
    }

    fn zero(&self, i: usize, j: usize) -> bool {
        self.pairings[i][j].is_zero()
    }

    /// All supports fitting the four reducible templates, as index lists in
    /// canonical order with their multiplicities.
    fn reducible_shapes(&self) -> Vec<(FiberType, Vec<(usize, i64)>)> {
        let mut out = Vec::new();

        // A2: unordered pairs of sections meeting once.
        for (ai, &p) in self.sections.iter().enumerate() {
            for &q in self.sections.iter().skip(ai + 1) {
                if self.one(p, q) {
                    out.push((FiberType::A2, vec![(p, 1), (q, 1)]));
                }
            }
        }

        // An: chord-free chains of (-2)-curves between two disjoint
        // sections. Grown from each section; the canonical direction is
        // fixed afterwards, duplicates removed by support key.
        for &start in &self.sections {
            let mut stack: Vec<Vec<usize>> = self
                .components
                .iter()
                .filter(|&&c| self.one(start, c))
                .map(|&c| vec![start, c])
                .collect();
            while let Some(path) = stack.pop() {
                let last = *path.last().unwrap();
                // Close with a section: disjoint from everything in the
                // path except the last node.
                for &end in &self.sections {
                    if end != start
                        && self.one(last, end)
                        && path[..path.len() - 1].iter().all(|&i| self.zero(i, end))
                    {
                        let mut chain = path.clone();
                        chain.push(end);
                        out.push((
                            FiberType::An(chain.len() as u32),
                            chain.into_iter().map(|i| (i, 1)).collect(),
                        ));
                    }
                }
                // Extend through another (-2)-curve, keeping the chain
                // chord-free.
                for &c in &self.components {
                    if !path.contains(&c)
                        && self.one(last, c)
                        && path[..path.len() - 1].iter().all(|&i| self.zero(i, c))
                    {
                        let mut nxt = path.clone();
                        nxt.push(c);
                        stack.push(nxt);
                    }
                }
            }
        }

        // D3: doubled section with two disjoint simple (-2)-curves.
        for &p in &self.sections {
            let legs: Vec<usize> = self
                .components
                .iter()
                .copied()
                .filter(|&c| self.one(p, c))
                .collect();
            for (ai, &c1) in legs.iter().enumerate() {
                for &c2 in legs.iter().skip(ai + 1) {
                    if self.zero(c1, c2) {
                        out.push((FiberType::D3, vec![(p, 2), (c1, 1), (c2, 1)]));
                    }
                }
            }
        }

        // Dm: doubled chord-free chain from a section, ending in a fork of
        // two disjoint simple (-2)-curves that are extremities.
        for &p in &self.sections {
            let mut stack: Vec<Vec<usize>> = self
                .components
                .iter()
                .filter(|&&c| self.one(p, c))
                .map(|&c| vec![p, c])
                .collect();
            while let Some(chain) = stack.pop() {
                let last = *chain.last().unwrap();
                let fork_candidates: Vec<usize> = self
                    .components
                    .iter()
                    .copied()
                    .filter(|&c| {
                        !chain.contains(&c)
                            && self.one(last, c)
                            && chain[..chain.len() - 1].iter().all(|&i| self.zero(i, c))
                    })
                    .collect();
                for (ai, &f1) in fork_candidates.iter().enumerate() {
                    for &f2 in fork_candidates.iter().skip(ai + 1) {
                        if self.zero(f1, f2) {
                            let mut support: Vec<(usize, i64)> =
                                chain.iter().map(|&i| (i, 2)).collect();
                            support.push((f1, 1));
                            support.push((f2, 1));
                            out.push((FiberType::Dm(support.len() as u32), support));
                        }
                    }
                }
                for &c in &fork_candidates {
                    let mut nxt = chain.clone();
                    nxt.push(c);
                    stack.push(nxt);
                }
            }
        }

        out
    }
}

/// All singular fibers of the conic bundle defined by `target` that are
/// supported on the model's declared negative curves. Complete relative to
/// the inventory; deterministically ordered by (type, support labels).
pub fn enumerate_singular_fibers(
    model: &SurfaceModel,
    target: &ConicClass,
) -> Vec<SingularConicFiber> {
    // Only curves orthogonal to the target class can appear in its fibers.
    let vertical: Vec<&NamedCurve> = model
        .negative_curve_inventory()
        .into_iter()
        .filter(|c| target.class.intersect(&c.class).is_zero())
        .collect();
    let num = Enumerator::new(vertical);

    let mut seen: BTreeSet<Vec<(String, i64)>> = BTreeSet::new();
    let mut fibers = Vec::new();
    for (_, indexed) in num.reducible_shapes() {
        let support: Vec<(&NamedCurve, i64)> =
            indexed.iter().map(|&(i, m)| (num.curves[i], m)).collect();
        if fiber_class(&support) != target.class {
            continue;
        }
        let fiber_type = classify_fiber(&support).expect("template-matched support must classify");
        let ordered = canonical_order(fiber_type, support);
        let fiber = make_fiber(fiber_type, ordered);
        if seen.insert(fiber.support_key()) {
            fibers.push(fiber);
        }
    }
    fibers.sort_by(|a, b| {
        rank_of(&a.fiber_type)
            .cmp(&rank_of(&b.fiber_type))
            .then_with(|| a.support.cmp(&b.support))
    });
    fibers
}

fn canonical_order(
    fiber_type: FiberType,
    support: Vec<(&NamedCurve, i64)>,
) -> Vec<(&NamedCurve, i64)> {
    match fiber_type {
        FiberType::Type0 => support,
        FiberType::A2 => canonical_a2(support[0].0, support[1].0),
        FiberType::An(_) => {
            // The growth order is already a chain; orient it from the
            // lexicographically smaller end.
            let mut chain = support;
            if chain.last().unwrap().0.label < chain[0].0.label {
                chain.reverse();
            }
            chain
        }
        FiberType::D3 | FiberType::Dm(_) => {
            // Section-first chain order with the trailing fork sorted.
            let mut v = support;
            let k = v.len();
            v[k - 2..].sort_by(|a, b| a.0.label.cmp(&b.0.label));
            v
        }
    }
}

/// All conic bundles on the model: conic classes found in the coefficient
/// box `1 <= a <= bound`, `0 <= bi <= a`, together with every class arising
/// as a template sum over the inventory, each paired with its enumerated
/// singular fibers. `bound = 0` searches nothing.
pub fn enumerate_conic_bundles(model: &SurfaceModel, bound: i64) -> Vec<ConicBundle> {
    if bound < 1 {
        return Vec::new();
    }
    let mut classes: BTreeSet<DivisorClass> = BTreeSet::new();

    // Box search. The two numeric conditions pin the coefficient sums:
    // Σ bi = 3a - 2 and Σ bi² = a², which prunes hard.
    for a in 1..=bound {
        let mut coeffs = [0i64; 10];
        coeffs[0] = a;
        box_search(&mut coeffs, 1, 3 * a - 2, a * a, a, &mut classes);
    }

    // Template sums over the inventory reach classes outside the box.
    let inventory = model.negative_curve_inventory();
    let num = Enumerator::new(inventory);
    for (_, indexed) in num.reducible_shapes() {
        let support: Vec<(&NamedCurve, i64)> =
            indexed.iter().map(|&(i, m)| (num.curves[i], m)).collect();
        classes.insert(fiber_class(&support));
    }

    let mut bundles = Vec::new();
    for class in classes {
        if let Ok(certified) = verify_conic_class(&class, model) {
            let fibers = enumerate_singular_fibers(model, &certified);
            bundles.push(ConicBundle {
                class: certified,
                fibers,
            });
        }
    }
    bundles.sort_by(|a, b| a.class.class.cmp(&b.class.class));
    bundles
}

fn box_search(
    coeffs: &mut [i64; 10],
    pos: usize,
    rem_sum: i64,
    rem_square: i64,
    a: i64,
    classes: &mut BTreeSet<DivisorClass>,
) {
    if pos == 10 {
        if rem_sum == 0 && rem_square == 0 {
            let d = DivisorClass::from_i64(*coeffs);
            if d.is_conic_class_numeric() {
                classes.insert(d);
            }
        }
        return;
    }
    let slots_after = 9 - pos as i64;
    for b in 0..=a.min(rem_sum) {
        let s = rem_sum - b;
        let q = rem_square - b * b;
        if q < 0 {
            break;
        }
        // Nonnegative integers x1..xk with Σ xi = s, Σ xi² = q, xi <= a
        // exist only inside these bounds.
        if s > slots_after * a || q > s * a || s * s > q * slots_after.max(1) {
            continue;
        }
        coeffs[pos] = b;
        box_search(coeffs, pos + 1, s, q, a, classes);
        coeffs[pos] = 0;
    }
}
