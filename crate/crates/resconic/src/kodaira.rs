//! Kodaira fiber types: intersection graphs, component multiplicities and
//! configuration bookkeeping for the elliptic fibration.
//!
//! Reducible fibers are extended Dynkin diagrams of smooth rational
//! (-2)-curves. Component multiplicities are not tabulated; they are the
//! primitive positive null vector of the graph's intersection matrix, which
//! is the computable content of Zariski's lemma, and [`fiber_multiplicities`]
//! recovers them by exact integer elimination.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KodairaError {
    #[error("parameter out of range for {0}: {1}")]
    OutOfRange(&'static str, u32),
    #[error("unknown Kodaira tag `{0}`")]
    UnknownTag(String),
    #[error("not a fiber graph: {0}")]
    NotAFiberGraph(String),
    #[error("configuration has negative Mordell-Weil rank ({0})")]
    NegativeRank(i64),
}

/// Kodaira type of a singular fiber of an elliptic fibration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    /// `I_n`, `n >= 1`: a nodal curve (`n = 1`) or a cycle of `n`
    /// (-2)-curves.
    In(u32),
    /// Cuspidal curve.
    II,
    /// Two (-2)-curves meeting with multiplicity 2 at a single point.
    III,
    /// Three (-2)-curves through one common point.
    IV,
    /// `I_n*`, `n >= 0`: the diagram `D~(n+4)`.
    InStar(u32),
    /// `E~6`.
    IVStar,
    /// `E~7`.
    IIIStar,
    /// `E~8`.
    IIStar,
}

impl KodairaType {
    /// All tags with bounded parameters, in a fixed order.
    pub fn standard_range() -> Vec<KodairaType> {
        let mut v: Vec<KodairaType> = (1..=9).map(KodairaType::In).collect();
        v.extend([KodairaType::II, KodairaType::III, KodairaType::IV]);
        v.extend((0..=4).map(KodairaType::InStar));
        v.extend([
            KodairaType::IVStar,
            KodairaType::IIIStar,
            KodairaType::IIStar,
        ]);
        v
    }

    pub fn is_parameter_valid(&self) -> bool {
        match self {
            KodairaType::In(n) => *n >= 1,
            _ => true,
        }
    }

    /// Number of irreducible components.
    pub fn component_count(&self) -> u32 {
        match self {
            KodairaType::In(n) => *n,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::InStar(n) => n + 5,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }

    /// Euler number contribution of the fiber.
    pub fn euler_number(&self) -> i64 {
        match self {
            KodairaType::In(n) => *n as i64,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::InStar(n) => *n as i64 + 6,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    /// Reducible means at least two components; only `I_1` and `II` are
    /// integral curves.
    pub fn is_reducible(&self) -> bool {
        self.component_count() >= 2
    }

    /// Reduced means every component has multiplicity one.
    pub fn is_reduced(&self) -> bool {
        matches!(
            self,
            KodairaType::In(_) | KodairaType::II | KodairaType::III | KodairaType::IV
        )
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::In(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::InStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

impl FromStr for KodairaType {
    type Err = KodairaError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = match s {
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "II*" => KodairaType::IIStar,
            "III*" => KodairaType::IIIStar,
            "IV*" => KodairaType::IVStar,
            _ => {
                let body = s
                    .strip_prefix('I')
                    .ok_or_else(|| KodairaError::UnknownTag(s.to_string()))?;
                let (digits, star) = match body.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (body, false),
                };
                let n: u32 = digits
                    .parse()
                    .map_err(|_| KodairaError::UnknownTag(s.to_string()))?;
                if star {
                    KodairaType::InStar(n)
                } else {
                    if n == 0 {
                        return Err(KodairaError::OutOfRange("I_n", 0));
                    }
                    KodairaType::In(n)
                }
            }
        };
        Ok(t)
    }
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for KodairaType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One component of a fiber graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberNode {
    pub label: String,
    pub self_intersection: i64,
    pub multiplicity: i64,
}

/// Weighted intersection graph of the components of one Kodaira fiber.
///
/// Nodes are labelled `v0, v1, ...` in a fixed documented order so that the
/// multiplicity vector is reproducible byte for byte:
///
/// - `I_n` (`n >= 3`): the cycle `v0 - v1 - ... - v{n-1} - v0`.
/// - `I_2`, `III`: two nodes joined by an edge of weight 2.
/// - `IV`: a triangle with unit edge weights.
/// - `I_n*`: central chain `v0 ... vn` (multiplicity 2), then the two leaves
///   at `v0`, then the two leaves at `vn` (multiplicity 1).
/// - `IV*`, `III*`, `II*`: the longest chain first, low-multiplicity end
///   first, then the branch node(s) attached to the unique degree-3 node.
/// - `I_1`, `II`: a single node of self-intersection 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberGraph {
    pub kodaira: KodairaType,
    nodes: Vec<FiberNode>,
    adjacency: Vec<Vec<i64>>,
}

impl FiberGraph {
    fn assemble(
        kodaira: KodairaType,
        self_ints: Vec<i64>,
        multiplicities: Vec<i64>,
        edges: &[(usize, usize, i64)],
    ) -> FiberGraph {
        let n = self_ints.len();
        let mut adjacency = vec![vec![0i64; n]; n];
        for &(i, j, w) in edges {
            adjacency[i][j] = w;
            adjacency[j][i] = w;
        }
        let nodes = self_ints
            .into_iter()
            .zip(multiplicities)
            .enumerate()
            .map(|(i, (s, m))| FiberNode {
                label: format!("v{i}"),
                self_intersection: s,
                multiplicity: m,
            })
            .collect();
        FiberGraph {
            kodaira,
            nodes,
            adjacency,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[FiberNode] {
        &self.nodes
    }

    pub fn edge_weight(&self, i: usize, j: usize) -> i64 {
        self.adjacency[i][j]
    }

    pub fn multiplicities(&self) -> Vec<i64> {
        self.nodes.iter().map(|n| n.multiplicity).collect()
    }

    /// Nodes of multiplicity one. Sections of the elliptic fibration can
    /// only meet the fiber there.
    pub fn simple_components(&self) -> Vec<usize> {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.multiplicity == 1)
            .map(|(i, _)| i)
            .collect()
    }

    /// Full intersection matrix, self-intersections on the diagonal.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let n = self.node_count();
        let mut g = self.adjacency.clone();
        for (i, row) in g.iter_mut().enumerate().take(n) {
            row[i] = self.nodes[i].self_intersection;
        }
        g
    }

    /// `F·C` for the node `i`, where `F = Σ multiplicity * component`.
    pub fn pairing_with_fiber(&self, i: usize) -> i64 {
        let g = self.gram();
        self.nodes
            .iter()
            .enumerate()
            .map(|(j, n)| n.multiplicity * g[i][j])
            .sum()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("graph \"{}\" {{\n", self.kodaira));
        out.push_str("  node [shape=point, width=0.15];\n");
        for node in &self.nodes {
            out.push_str(&format!(
                "  \"{}\" [xlabel=\"{} x{}\"];\n",
                node.label, node.label, node.multiplicity
            ));
        }
        for i in 0..self.node_count() {
            for j in (i + 1)..self.node_count() {
                let w = self.adjacency[i][j];
                if w > 0 {
                    if w == 1 {
                        out.push_str(&format!(
                            "  \"{}\" -- \"{}\";\n",
                            self.nodes[i].label, self.nodes[j].label
                        ));
                    } else {
                        out.push_str(&format!(
                            "  \"{}\" -- \"{}\" [label=\"{w}\"];\n",
                            self.nodes[i].label, self.nodes[j].label
                        ));
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the standard extended Dynkin graph of a Kodaira type with its
/// canonical null-vector multiplicities.
pub fn build_fiber_graph(t: &KodairaType) -> Result<FiberGraph, KodairaError> {
    let graph = match *t {
        KodairaType::In(0) => return Err(KodairaError::OutOfRange("I_n", 0)),
        KodairaType::In(1) | KodairaType::II => {
            // Irreducible: one integral curve of arithmetic genus 1.
            FiberGraph::assemble(*t, vec![0], vec![1], &[])
        }
        KodairaType::In(2) | KodairaType::III => {
            FiberGraph::assemble(*t, vec![-2, -2], vec![1, 1], &[(0, 1, 2)])
        }
        KodairaType::In(n) => {
            let n = n as usize;
            let mut edges: Vec<(usize, usize, i64)> = (0..n - 1).map(|i| (i, i + 1, 1)).collect();
            edges.push((n - 1, 0, 1));
            FiberGraph::assemble(*t, vec![-2; n], vec![1; n], &edges)
        }
        KodairaType::IV => FiberGraph::assemble(
            *t,
            vec![-2, -2, -2],
            vec![1, 1, 1],
            &[(0, 1, 1), (1, 2, 1), (0, 2, 1)],
        ),
        KodairaType::InStar(n) => {
            let n = n as usize;
            // v0..vn central chain, v{n+1},v{n+2} forked at v0,
            // v{n+3},v{n+4} forked at vn.
            let total = n + 5;
            let mut edges: Vec<(usize, usize, i64)> = (0..n).map(|i| (i, i + 1, 1)).collect();
            edges.push((n + 1, 0, 1));
            edges.push((n + 2, 0, 1));
            edges.push((n + 3, n, 1));
            edges.push((n + 4, n, 1));
            let mut mult = vec![2i64; n + 1];
            mult.extend([1, 1, 1, 1]);
            FiberGraph::assemble(*t, vec![-2; total], mult, &edges)
        }
        KodairaType::IVStar => {
            // Chain v0..v4 with marks 1,2,3,2,1; branch v5 (mark 2) on the
            // center v2, leaf v6 (mark 1) on v5.
            let edges = [
                (0, 1, 1),
                (1, 2, 1),
                (2, 3, 1),
                (3, 4, 1),
                (2, 5, 1),
                (5, 6, 1),
            ];
            FiberGraph::assemble(*t, vec![-2; 7], vec![1, 2, 3, 2, 1, 2, 1], &edges)
        }
        KodairaType::IIIStar => {
            // Chain v0..v6 with marks 1,2,3,4,3,2,1; branch v7 (mark 2) on v3.
            let mut edges: Vec<(usize, usize, i64)> = (0..6).map(|i| (i, i + 1, 1)).collect();
            edges.push((3, 7, 1));
            FiberGraph::assemble(*t, vec![-2; 8], vec![1, 2, 3, 4, 3, 2, 1, 2], &edges)
        }
        KodairaType::IIStar => {
            // Chain v0..v7 with marks 1,2,3,4,5,6,4,2; branch v8 (mark 3)
            // on the mark-6 node v5.
            let mut edges: Vec<(usize, usize, i64)> = (0..7).map(|i| (i, i + 1, 1)).collect();
            edges.push((5, 8, 1));
            FiberGraph::assemble(*t, vec![-2; 9], vec![1, 2, 3, 4, 5, 6, 4, 2, 3], &edges)
        }
    };
    debug_assert_eq!(graph.node_count() as u32, t.component_count());
    Ok(graph)
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn is_connected(gram: &[Vec<i64>]) -> bool {
    let n = gram.len();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if j != i && !seen[j] && gram[i][j] != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Recovers the component multiplicities of a connected fiber graph from
/// its full intersection matrix (self-intersections on the diagonal).
///
/// By Zariski's lemma the matrix of an actual fiber is negative
/// semidefinite with one-dimensional kernel, so the multiplicities are the
/// unique primitive positive integer null vector. Errors when the kernel
/// has dimension other than one or admits no strictly positive generator.
pub fn fiber_multiplicities(gram: &[Vec<i64>]) -> Result<Vec<i64>, KodairaError> {
    let n = gram.len();
    if n == 0 {
        return Err(KodairaError::NotAFiberGraph("empty graph".into()));
    }
    for (i, row) in gram.iter().enumerate() {
        if row.len() != n {
            return Err(KodairaError::NotAFiberGraph("matrix is not square".into()));
        }
        for (j, entry) in row.iter().enumerate() {
            if *entry != gram[j][i] {
                return Err(KodairaError::NotAFiberGraph(
                    "matrix is not symmetric".into(),
                ));
            }
        }
    }
    if !is_connected(gram) {
        return Err(KodairaError::NotAFiberGraph(
            "graph is not connected".into(),
        ));
    }

    // Fraction-free elimination over the integers; rows stay gcd-reduced so
    // entries remain small for the sizes that occur here.
    let mut rows: Vec<Vec<i128>> = gram
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        for r in (rank + 1)..n {
            if rows[r][col] != 0 {
                let a = rows[rank][col];
                let b = rows[r][col];
                let g = gcd(a, b);
                let (fa, fb) = (a / g, b / g);
                let pivot_row = rows[rank].clone();
                for (c, entry) in rows[r].iter_mut().enumerate() {
                    *entry = *entry * fa - pivot_row[c] * fb;
                }
                let rg = rows[r].iter().fold(0i128, |acc, &x| gcd(acc, x));
                if rg > 1 {
                    for entry in rows[r].iter_mut() {
                        *entry /= rg;
                    }
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }

    if n - rank != 1 {
        return Err(KodairaError::NotAFiberGraph(format!(
            "kernel has dimension {}, expected 1",
            n - rank
        )));
    }

    // Back-substitute with the free column set to 1, tracking a common
    // denominator so everything stays integral.
    let free_col = (0..n).find(|c| !pivot_cols.contains(c)).unwrap();
    let mut num = vec![0i128; n];
    let mut den = vec![1i128; n];
    num[free_col] = 1;
    for (r, &pc) in pivot_cols.iter().enumerate().rev() {
        // rows[r][pc] * x[pc] = -Σ_{c > pc} rows[r][c] * x[c]
        let mut acc_num = 0i128;
        let mut acc_den = 1i128;
        for c in (pc + 1)..n {
            if rows[r][c] != 0 && num[c] != 0 {
                // acc += rows[r][c] * num[c] / den[c]
                acc_num = acc_num * den[c] + rows[r][c] * num[c] * acc_den;
                acc_den *= den[c];
                let g = gcd(acc_num, acc_den);
                if g > 1 {
                    acc_num /= g;
                    acc_den /= g;
                }
            }
        }
        num[pc] = -acc_num;
        den[pc] = acc_den * rows[r][pc];
        let g = gcd(num[pc], den[pc]);
        if g > 1 {
            num[pc] /= g;
            den[pc] /= g;
        }
    }

    let mut lcm = 1i128;
    for &d in &den {
        lcm = lcm / gcd(lcm, d.abs()) * d.abs();
    }
    let mut vec_int: Vec<i128> = (0..n).map(|i| num[i] * (lcm / den[i])).collect();
    let g = vec_int.iter().fold(0i128, |acc, &x| gcd(acc, x));
    if g > 1 {
        for v in vec_int.iter_mut() {
            *v /= g;
        }
    }
    if vec_int.iter().all(|&v| v < 0) {
        for v in vec_int.iter_mut() {
            *v = -*v;
        }
    }
    if vec_int.iter().any(|&v| v <= 0) {
        return Err(KodairaError::NotAFiberGraph(
            "kernel generator is not strictly positive".into(),
        ));
    }
    vec_int
        .into_iter()
        .map(|v| {
            v.try_into()
                .map_err(|_| KodairaError::NotAFiberGraph("kernel entries exceed i64".into()))
        })
        .collect()
}

/// Multiset of Kodaira types attached to the elliptic fibration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberConfiguration(pub Vec<KodairaType>);

impl FiberConfiguration {
    pub fn new(types: Vec<KodairaType>) -> Self {
        FiberConfiguration(types)
    }

    pub fn parse(tags: &[&str]) -> Result<Self, KodairaError> {
        tags.iter()
            .map(|t| t.parse())
            .collect::<Result<Vec<_>, _>>()
            .map(FiberConfiguration)
    }

    pub fn iter(&self) -> impl Iterator<Item = &KodairaType> {
        self.0.iter()
    }

    pub fn euler_sum(&self) -> i64 {
        self.0.iter().map(|t| t.euler_number()).sum()
    }

    pub fn reducible(&self) -> Vec<KodairaType> {
        self.0
            .iter()
            .copied()
            .filter(|t| t.is_reducible())
            .collect()
    }

    pub fn nonreduced(&self) -> Vec<KodairaType> {
        self.0.iter().copied().filter(|t| !t.is_reduced()).collect()
    }

    /// Mordell-Weil rank by Shioda-Tate: `8` minus `(components - 1)`
    /// summed over the reducible fibers. The fibration is extremal exactly
    /// when this is zero.
    pub fn mw_rank(&self) -> Result<i64, KodairaError> {
        let drop: i64 = self
            .reducible()
            .iter()
            .map(|t| t.component_count() as i64 - 1)
            .sum();
        let rank = 8 - drop;
        if rank < 0 {
            return Err(KodairaError::NegativeRank(rank));
        }
        Ok(rank)
    }

    /// Consistency report: Euler numbers must sum to 12 and the derived
    /// Mordell-Weil rank must be in `0..=8`. Failures are carried in the
    /// report rather than returned as errors.
    pub fn validate(&self) -> ConfigReport {
        let euler_sum = self.euler_sum();
        let euler_ok = euler_sum == 12;
        let mut problems = Vec::new();
        if !euler_ok {
            problems.push(format!("euler numbers sum to {euler_sum}, expected 12"));
        }
        for t in &self.0 {
            if !t.is_parameter_valid() {
                problems.push(format!("invalid tag parameter in {t}"));
            }
        }
        let mw_rank = match self.mw_rank() {
            Ok(r) => Some(r),
            Err(e) => {
                problems.push(e.to_string());
                None
            }
        };
        ConfigReport {
            euler_sum,
            euler_ok,
            mw_rank,
            reducible: self.reducible(),
            nonreduced: self.nonreduced(),
            problems,
        }
    }
}

impl fmt::Display for FiberConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

/// Validation report for a fiber configuration.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigReport {
    pub euler_sum: i64,
    pub euler_ok: bool,
    pub mw_rank: Option<i64>,
    pub reducible: Vec<KodairaType>,
    pub nonreduced: Vec<KodairaType>,
    pub problems: Vec<String>,
}

impl ConfigReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(tags: &[&str]) -> FiberConfiguration {
        FiberConfiguration::parse(tags).unwrap()
    }

    #[test]
    fn tag_parse_display_round_trip() {
        for t in KodairaType::standard_range() {
            let s = t.to_string();
            assert_eq!(s.parse::<KodairaType>().unwrap(), t);
        }
        assert!("I0".parse::<KodairaType>().is_err());
        assert!("V".parse::<KodairaType>().is_err());
        assert_eq!("I12".parse::<KodairaType>().unwrap(), KodairaType::In(12));
        assert_eq!(
            "I0*".parse::<KodairaType>().unwrap(),
            KodairaType::InStar(0)
        );
    }

    #[test]
    fn e8_tilde_graph() {
        let g = build_fiber_graph(&KodairaType::IIStar).unwrap();
        assert_eq!(g.node_count(), 9);
        assert_eq!(g.multiplicities(), vec![1, 2, 3, 4, 5, 6, 4, 2, 3]);
        // Branch node hangs off the multiplicity-6 chain node.
        assert_eq!(g.edge_weight(5, 8), 1);
        assert_eq!(g.edge_weight(7, 8), 0);
    }

    #[test]
    fn small_graphs() {
        let i2 = build_fiber_graph(&KodairaType::In(2)).unwrap();
        assert_eq!(i2.node_count(), 2);
        assert_eq!(i2.edge_weight(0, 1), 2);
        assert_eq!(i2.multiplicities(), vec![1, 1]);

        let i0s = build_fiber_graph(&KodairaType::InStar(0)).unwrap();
        assert_eq!(i0s.node_count(), 5);
        assert_eq!(i0s.multiplicities(), vec![2, 1, 1, 1, 1]);
        for leaf in 1..5 {
            assert_eq!(i0s.edge_weight(0, leaf), 1);
        }

        assert!(build_fiber_graph(&KodairaType::In(0)).is_err());
    }

    #[test]
    fn null_vector_of_a2_tilde_triangle() {
        let gram = vec![vec![-2, 1, 1], vec![1, -2, 1], vec![1, 1, -2]];
        assert_eq!(fiber_multiplicities(&gram).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn null_vector_of_e7_tilde() {
        let g = build_fiber_graph(&KodairaType::IIIStar).unwrap();
        let m = fiber_multiplicities(&g.gram()).unwrap();
        assert_eq!(m, vec![1, 2, 3, 4, 3, 2, 1, 2]);
    }

    #[test]
    fn nonsingular_graph_is_rejected() {
        // A_2 path: intersection matrix is nonsingular.
        let gram = vec![vec![-2, 1], vec![1, -2]];
        assert!(matches!(
            fiber_multiplicities(&gram),
            Err(KodairaError::NotAFiberGraph(_))
        ));
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let gram = vec![vec![-2, 0], vec![0, -2]];
        assert!(matches!(
            fiber_multiplicities(&gram),
            Err(KodairaError::NotAFiberGraph(_))
        ));
    }

    #[test]
    fn built_graphs_reproduce_their_multiplicities() {
        for t in KodairaType::standard_range() {
            let g = build_fiber_graph(&t).unwrap();
            let m = fiber_multiplicities(&g.gram()).unwrap();
            assert_eq!(m, g.multiplicities(), "null vector mismatch for {t}");
            for i in 0..g.node_count() {
                assert_eq!(g.pairing_with_fiber(i), 0, "F·C != 0 for {t} node {i}");
            }
        }
    }

    #[test]
    fn simple_components_are_the_multiplicity_one_nodes() {
        let g = build_fiber_graph(&KodairaType::IIStar).unwrap();
        assert_eq!(g.simple_components(), vec![0]);
        let g = build_fiber_graph(&KodairaType::InStar(2)).unwrap();
        assert_eq!(g.simple_components(), vec![3, 4, 5, 6]);
        let g = build_fiber_graph(&KodairaType::In(5)).unwrap();
        assert_eq!(g.simple_components().len(), 5);
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(KodairaType::IIStar.euler_number(), 10);
        assert_eq!(KodairaType::In(7).euler_number(), 7);
        assert_eq!(KodairaType::In(1).euler_number(), 1);
        assert_eq!(cfg(&["I7", "II", "I1", "I1", "I1"]).euler_sum(), 12);
        assert_eq!(
            cfg(&["II", "I1", "I1", "I1", "I1", "I1", "I1", "I1", "I1", "I1", "I1"]).euler_sum(),
            12
        );
    }

    #[test]
    fn mordell_weil_ranks() {
        assert_eq!(cfg(&["II*", "II"]).mw_rank().unwrap(), 0);
        assert_eq!(cfg(&["III*", "I1", "I1", "I1"]).mw_rank().unwrap(), 1);
        assert_eq!(
            cfg(&["II", "I1", "I1", "I1", "I1", "I1", "I1", "I1", "I1", "I1", "I1"])
                .mw_rank()
                .unwrap(),
            8
        );
        assert_eq!(cfg(&["I2*", "III", "I1"]).mw_rank().unwrap(), 1);
        assert!(cfg(&["II*", "II*"]).mw_rank().is_err());
    }

    #[test]
    fn config_reports() {
        let r = cfg(&["II*", "II"]).validate();
        assert!(r.is_valid());
        assert_eq!(r.euler_sum, 12);
        assert_eq!(r.mw_rank, Some(0));
        assert_eq!(r.reducible, vec![KodairaType::IIStar]);
        assert_eq!(r.nonreduced, vec![KodairaType::IIStar]);

        let r = cfg(&["I2*", "III", "I1"]).validate();
        assert!(r.is_valid());
        assert_eq!(r.mw_rank, Some(1));
        assert_eq!(r.reducible, vec![KodairaType::InStar(2), KodairaType::III]);
        assert_eq!(r.nonreduced, vec![KodairaType::InStar(2)]);

        let r = cfg(&["II*", "II*"]).validate();
        assert!(!r.is_valid());
        assert_eq!(r.euler_sum, 20);
    }

    #[test]
    fn dot_export_is_deterministic() {
        let g = build_fiber_graph(&KodairaType::In(2)).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot, g.to_dot());
        assert!(dot.contains("\"v0\" -- \"v1\" [label=\"2\"]"));
        assert!(dot.contains("x1"));
    }
}
