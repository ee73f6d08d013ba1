//! Graph algebra (complete graphs, union, join, generalized composition) and
//! closed-form structural descriptions of the conjugacy super graphs.
//!
//! The structural builders never consult a [`GroupTable`]: they assemble each
//! graph from its join/union/composition expression and then place every part
//! on the canonical element indices by exponent arithmetic alone. Comparing
//! their output with the group-theoretic construction is therefore an
//! independent check of both.
//!
//! [`GroupTable`]: crate::group::GroupTable

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BaseGraph, Relation, SimpleGraph};
use crate::group::Family;

/// `K_n`.
pub fn complete(n: usize) -> SimpleGraph {
    SimpleGraph::from_fn(n, |_, _| true)
}

/// Disjoint union; vertices of `g2` are shifted past those of `g1`.
pub fn union(g1: &SimpleGraph, g2: &SimpleGraph) -> SimpleGraph {
    let shift = g1.vertex_count();
    SimpleGraph::from_edges(
        shift + g2.vertex_count(),
        g1.edges()
            .chain(g2.edges().map(|(u, v)| (u + shift, v + shift))),
    )
}

/// Disjoint union plus every edge between the two sides.
pub fn join(g1: &SimpleGraph, g2: &SimpleGraph) -> SimpleGraph {
    let mut g = union(g1, g2);
    let shift = g1.vertex_count();
    for u in 0..shift {
        for v in 0..g2.vertex_count() {
            g.add_edge(u, shift + v);
        }
    }
    g
}

/// Union of several graphs, left to right.
pub fn union_all<'a>(graphs: impl IntoIterator<Item = &'a SimpleGraph>) -> SimpleGraph {
    graphs
        .into_iter()
        .fold(SimpleGraph::empty(0), |acc, g| union(&acc, g))
}

/// The generalized composition `H[Γ_1, ..., Γ_k]`.
#[derive(Debug, Clone)]
pub struct CompositionSpec {
    outer: SimpleGraph,
    parts: Vec<SimpleGraph>,
}

impl CompositionSpec {
    pub fn new(outer: SimpleGraph, parts: Vec<SimpleGraph>) -> Result<Self> {
        if parts.len() != outer.vertex_count() {
            return Err(Error::ArityMismatch {
                outer: outer.vertex_count(),
                parts: parts.len(),
            });
        }
        if let Some(i) = parts.iter().position(|p| p.vertex_count() == 0) {
            return Err(Error::InvalidGraph(format!("part {i} has no vertices")));
        }
        Ok(CompositionSpec { outer, parts })
    }

    pub fn outer(&self) -> &SimpleGraph {
        &self.outer
    }

    pub fn parts(&self) -> &[SimpleGraph] {
        &self.parts
    }

    /// Start index of each part in the composed vertex order.
    pub fn part_offsets(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, p| {
                let start = *acc;
                *acc += p.vertex_count();
                Some(start)
            })
            .collect()
    }

    pub fn composed_order(&self) -> usize {
        self.parts.iter().map(SimpleGraph::vertex_count).sum()
    }
}

/// Vertex `v^p_i ~ v^q_j` iff `i = j` and `p ~ q` in `Γ_i`, or `i ≠ j` and `i ~ j` in `H`.
pub fn compose(spec: &CompositionSpec) -> SimpleGraph {
    let offsets = spec.part_offsets();
    let mut g = SimpleGraph::empty(spec.composed_order());
    for (part, &start) in spec.parts.iter().zip(&offsets) {
        for (u, v) in part.edges() {
            g.add_edge(start + u, start + v);
        }
    }
    for (i, j) in spec.outer.edges() {
        for p in 0..spec.parts[i].vertex_count() {
            for q in 0..spec.parts[j].vertex_count() {
                g.add_edge(offsets[i] + p, offsets[j] + q);
            }
        }
    }
    g
}

/// The two super graphs with known closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GraphKind {
    /// Conjugacy super enhanced power graph.
    #[serde(rename = "csep")]
    Csep,
    /// Conjugacy super commuting graph.
    #[serde(rename = "cscom")]
    Cscom,
}

impl GraphKind {
    pub const ALL: [GraphKind; 2] = [GraphKind::Csep, GraphKind::Cscom];

    pub fn base(self) -> BaseGraph {
        match self {
            GraphKind::Csep => BaseGraph::Enhanced,
            GraphKind::Cscom => BaseGraph::Commuting,
        }
    }

    pub fn relation(self) -> Relation {
        Relation::Conjugacy
    }

    pub fn short_name(self) -> &'static str {
        match self {
            GraphKind::Csep => "csep",
            GraphKind::Cscom => "cscom",
        }
    }

    /// Families for which a closed-form structure and spectrum are available.
    pub fn supports(self, family: Family) -> bool {
        match self {
            GraphKind::Csep => matches!(
                family,
                Family::Dihedral | Family::Quaternion | Family::Semidihedral
            ),
            GraphKind::Cscom => family == Family::Semidihedral,
        }
    }

    pub(crate) fn check_supported(self, family: Family, n: usize) -> Result<()> {
        if !self.supports(family) {
            return Err(Error::UnsupportedCombination {
                kind: self.to_string(),
                family,
            });
        }
        let min = family.min_parameter();
        if n < min {
            return Err(Error::ParameterOutOfRange { family, n, min });
        }
        Ok(())
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::Csep => "CSEP",
            GraphKind::Cscom => "CSCom",
        })
    }
}

impl FromStr for GraphKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csep" => Ok(GraphKind::Csep),
            "cscom" => Ok(GraphKind::Cscom),
            other => Err(format!(
                "unknown graph kind `{other}` (expected csep or cscom)"
            )),
        }
    }
}

/// A composition together with the canonical element index of every composed vertex.
#[derive(Debug, Clone)]
pub struct StructuralForm {
    pub spec: CompositionSpec,
    /// `assignment[i]` lists the element indices carried by part `i`, in part-vertex order.
    pub assignment: Vec<Vec<usize>>,
}

impl StructuralForm {
    /// The composed graph on canonical element indices.
    pub fn build(&self) -> Result<SimpleGraph> {
        let composed = compose(&self.spec);
        let new_index: Vec<usize> = self.assignment.iter().flatten().copied().collect();
        composed.permuted(&new_index)
    }
}

fn k(n: usize) -> SimpleGraph {
    complete(n)
}

fn parts_of(blocks: &[Vec<usize>]) -> Vec<SimpleGraph> {
    blocks.iter().map(|b| complete(b.len())).collect()
}

/// Non-central rotation classes `{a^i, a^(±i twisted)}` as pairs in exponent order.
/// `partner` maps an exponent to the other member of its class; `skip` lists
/// exponents placed elsewhere.
fn rotation_pairs(
    k_rot: usize,
    skip: &[usize],
    partner: impl Fn(usize) -> usize,
) -> Vec<Vec<usize>> {
    let mut used = vec![false; k_rot];
    skip.iter().for_each(|&s| used[s] = true);
    let mut pairs = Vec::new();
    for i in 0..k_rot {
        if used[i] {
            continue;
        }
        let j = partner(i);
        assert!(j != i && !used[j], "rotation class of a^{i} is not a pair");
        used[i] = true;
        used[j] = true;
        pairs.push(vec![i, j]);
    }
    pairs
}

fn reflections(k_rot: usize, keep: impl Fn(usize) -> bool) -> Vec<usize> {
    (0..k_rot).filter(|&i| keep(i)).map(|i| k_rot + i).collect()
}

/// The composition expression of `kind` on `family` with parameter `n`,
/// with parts assigned to canonical element indices.
///
/// Parts are ordered: central singletons first, then rotation classes in
/// exponent order, then reflection classes.
pub fn structural_form(kind: GraphKind, family: Family, n: usize) -> Result<StructuralForm> {
    kind.check_supported(family, n)?;
    let odd = n % 2 == 1;
    let (outer, blocks): (SimpleGraph, Vec<Vec<usize>>) = match (kind, family) {
        (GraphKind::Csep, Family::Dihedral) if odd => {
            // K_1 ∨ (K_{(n-1)/2} ∪ K_1) [K_1, K_2, ..., K_2, K_n]
            let outer = join(&k(1), &union(&k((n - 1) / 2), &k(1)));
            let mut blocks = vec![vec![0]];
            blocks.extend(rotation_pairs(n, &[0], |i| n - i));
            blocks.push(reflections(n, |_| true));
            (outer, blocks)
        }
        (GraphKind::Csep, Family::Dihedral) => {
            // K_1 ∨ ((K_1 ∨ K_{(n-2)/2}) ∪ K_1 ∪ K_1) [K_1, K_1, K_2, ..., K_2, K_{n/2}, K_{n/2}]
            let rotations = join(&k(1), &k((n - 2) / 2));
            let outer = join(&k(1), &union_all([&rotations, &k(1), &k(1)]));
            let mut blocks = vec![vec![0], vec![n / 2]];
            blocks.extend(rotation_pairs(n, &[0, n / 2], |i| n - i));
            blocks.push(reflections(n, |i| i % 2 == 1));
            blocks.push(reflections(n, |i| i % 2 == 0));
            (outer, blocks)
        }
        (GraphKind::Csep, Family::Quaternion) => {
            // K_2 ∨ (K_{n-1} ∪ K_2) for odd n, K_2 ∨ (K_{n-1} ∪ K_1 ∪ K_1) for even n,
            // with parts [K_1, K_1, K_2, ..., K_2, K_n, K_n].
            let reflection_outer = if odd { k(2) } else { union(&k(1), &k(1)) };
            let outer = join(&k(2), &union(&k(n - 1), &reflection_outer));
            let m = 2 * n;
            let mut blocks = vec![vec![0], vec![n]];
            blocks.extend(rotation_pairs(m, &[0, n], |i| m - i));
            blocks.push(reflections(m, |i| i % 2 == 1));
            blocks.push(reflections(m, |i| i % 2 == 0));
            (outer, blocks)
        }
        (GraphKind::Csep, Family::Semidihedral) => {
            // K_1 ∨ ((K_1 ∨ (K_{2n-1} ∪ K_1)) ∪ K_1 [∪ K_1]) with parts
            // [K_1, K_1, K_2, ..., K_2, K_{2n}, K_{2n}] (even n) or
            // [K_1, K_1, K_2, ..., K_2, K_{2n}, K_n, K_n] (odd n).
            let m = 4 * n;
            let inner = join(&k(1), &union(&k(2 * n - 1), &k(1)));
            let even_classes = if odd { union(&k(1), &k(1)) } else { k(1) };
            let outer = join(&k(1), &union(&inner, &even_classes));
            let mut blocks = vec![vec![0], vec![2 * n]];
            let partner = |i: usize| if i % 2 == 0 { m - i } else { (6 * n - i) % m };
            if odd {
                // a^n and a^3n are central singletons; both sit in the rotation
                // clique, so they share one K_2 part.
                let mut pairs = rotation_pairs(m, &[0, 2 * n, n, 3 * n], partner);
                pairs.push(vec![n, 3 * n]);
                pairs.sort();
                blocks.extend(pairs);
                blocks.push(reflections(m, |i| i % 2 == 1));
                blocks.push(reflections(m, |i| i % 4 == 0));
                blocks.push(reflections(m, |i| i % 4 == 2));
            } else {
                blocks.extend(rotation_pairs(m, &[0, 2 * n], partner));
                blocks.push(reflections(m, |i| i % 2 == 1));
                blocks.push(reflections(m, |i| i % 2 == 0));
            }
            (outer, blocks)
        }
        (GraphKind::Cscom, Family::Semidihedral) => {
            let m = 4 * n;
            let partner = |i: usize| if i % 2 == 0 { m - i } else { (6 * n - i) % m };
            if odd {
                // K_4 ∨ (K_{2n-2} ∪ K_4) [K_1, K_1, K_1, K_1, K_2, ..., K_2, K_n, K_n, K_n, K_n]
                let outer = join(&k(4), &union(&k(2 * n - 2), &k(4)));
                let center = [0, n, 2 * n, 3 * n];
                let mut blocks: Vec<Vec<usize>> = center.iter().map(|&c| vec![c]).collect();
                blocks.extend(rotation_pairs(m, &center, partner));
                for residue in 0..4 {
                    blocks.push(reflections(m, |i| i % 4 == residue));
                }
                (outer, blocks)
            } else {
                // K_2 ∨ (K_{2n-1} ∪ K_1 ∪ K_1) [K_1, K_1, K_2, ..., K_2, K_{2n}, K_{2n}]
                let outer = join(&k(2), &union_all([&k(2 * n - 1), &k(1), &k(1)]));
                let mut blocks = vec![vec![0], vec![2 * n]];
                blocks.extend(rotation_pairs(m, &[0, 2 * n], partner));
                blocks.push(reflections(m, |i| i % 2 == 1));
                blocks.push(reflections(m, |i| i % 2 == 0));
                (outer, blocks)
            }
        }
        _ => unreachable!("check_supported rejects other combinations"),
    };
    let spec = CompositionSpec::new(outer, parts_of(&blocks))?;
    Ok(StructuralForm {
        spec,
        assignment: blocks,
    })
}

/// The closed-form structure of `kind` on `family`, on canonical element indices.
pub fn structural_graph(kind: GraphKind, family: Family, n: usize) -> Result<SimpleGraph> {
    structural_form(kind, family, n)?.build()
}
