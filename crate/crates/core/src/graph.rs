//! Simple graphs on group elements and the B-super-A construction.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupTable, Partition};

const WORD: usize = u64::BITS as usize;

/// Undirected simple graph on `0..N` with bit-packed adjacency rows.
#[derive(Clone)]
pub struct SimpleGraph {
    vertex_count: usize,
    words: usize,
    rows: Vec<u64>,
    group: Option<Arc<GroupTable>>,
}

impl SimpleGraph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        SimpleGraph {
            vertex_count: n,
            words,
            rows: vec![0; words * n],
            group: None,
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Builds a graph from an adjacency predicate evaluated on every unordered pair.
    pub fn from_fn(n: usize, adjacent: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let mut g = Self::empty(n);
        let words = g.words;
        g.rows
            .par_chunks_mut(words)
            .enumerate()
            .for_each(|(u, row)| {
                for v in (0..n).filter(|&v| v != u) {
                    if adjacent(u.min(v), u.max(v)) {
                        row[v / WORD] |= 1 << (v % WORD);
                    }
                }
            });
        g
    }

    /// Attaches the group whose element indexing the vertices follow.
    pub fn with_group(mut self, group: Arc<GroupTable>) -> Result<Self> {
        if group.order() != self.vertex_count {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: self.vertex_count,
            });
        }
        self.group = Some(group);
        Ok(self)
    }

    pub fn group(&self) -> Option<&Arc<GroupTable>> {
        self.group.as_ref()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Human-readable vertex name: the group label when known, else the index.
    pub fn vertex_label(&self, v: usize) -> String {
        match &self.group {
            Some(g) => g.label(v).to_string(),
            None => v.to_string(),
        }
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    /// Adds the edge `{u, v}`. Self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(
            u < self.vertex_count && v < self.vertex_count,
            "vertex out of range"
        );
        if u == v {
            return;
        }
        self.rows[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.rows[v * self.words + u / WORD] |= 1 << (u % WORD);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count).map(|u| self.degree(u)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(i, &w)| {
            (0..WORD)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| i * WORD + b)
        })
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count;
        n * n.saturating_sub(1) / 2 == self.edge_count()
    }

    /// True if `u` is adjacent to every other vertex.
    pub fn is_universal(&self, u: usize) -> bool {
        self.degree(u) + 1 == self.vertex_count
    }

    /// True if every edge of `self` is an edge of `other` (same vertex set).
    pub fn is_spanning_subgraph_of(&self, other: &SimpleGraph) -> bool {
        self.vertex_count == other.vertex_count
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    /// True if `vertices` induce a complete subgraph.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.vertex_count];
        let mut components = 0;
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        components
    }

    /// Relabels vertices: vertex `v` of `self` becomes `new_index[v]`.
    pub fn permuted(&self, new_index: &[usize]) -> Result<SimpleGraph> {
        let n = self.vertex_count;
        if new_index.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: new_index.len(),
            });
        }
        let mut seen = vec![false; n];
        for &t in new_index {
            if t >= n || std::mem::replace(&mut seen[t], true) {
                return Err(Error::InvalidGraph(format!(
                    "relabelling is not a permutation of 0..{n}"
                )));
            }
        }
        Ok(SimpleGraph::from_edges(
            n,
            self.edges().map(|(u, v)| (new_index[u], new_index[v])),
        ))
    }

    /// Checks symmetry and irreflexivity of the stored relation.
    pub fn check_invariants(&self) -> Result<()> {
        for u in 0..self.vertex_count {
            if self.has_edge(u, u) {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            for v in self.neighbors(u) {
                if v >= self.vertex_count || !self.has_edge(v, u) {
                    return Err(Error::InvalidGraph(format!("asymmetric edge {u} -> {v}")));
                }
            }
        }
        Ok(())
    }
}

/// Graphs compare by vertex count and edge set; attached group context is ignored.
impl PartialEq for SimpleGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.rows == other.rows
    }
}

impl Eq for SimpleGraph {}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGraph")
            .field("vertices", &self.vertex_count)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

fn attach(graph: SimpleGraph, group: &GroupTable) -> SimpleGraph {
    graph
        .with_group(Arc::new(group.clone()))
        .expect("graph built on the group's own index space")
}

/// `x ~ y` iff one is a positive power of the other.
pub fn power_graph(group: &GroupTable) -> SimpleGraph {
    let n = group.order();
    let mut g = SimpleGraph::empty(n);
    for y in 0..n {
        for x in group.cyclic_subgroup(y) {
            g.add_edge(x, y);
        }
    }
    attach(g, group)
}

/// `x ~ y` iff both lie in a common cyclic subgroup, tested through the
/// maximal cyclic subgroups.
pub fn enhanced_power_graph(group: &GroupTable) -> SimpleGraph {
    let mut g = SimpleGraph::empty(group.order());
    for h in group.maximal_cyclic_subgroups() {
        for (i, &x) in h.iter().enumerate() {
            for &y in &h[i + 1..] {
                g.add_edge(x, y);
            }
        }
    }
    attach(g, group)
}

/// `x ~ y` iff `xy = yx`.
pub fn commuting_graph(group: &GroupTable) -> SimpleGraph {
    let g = SimpleGraph::from_fn(group.order(), |x, y| group.commute(x, y));
    attach(g, group)
}

/// The B-super-A graph of `base` with respect to `classes`.
///
/// Distinct classes are adjacent iff some pair of their members is adjacent
/// in `base`. Inside a class, `class_cliques = true` makes every class a
/// clique; with `false` a class becomes a clique only if it already contains
/// an edge of `base`, and is independent otherwise.
pub fn super_graph(
    base: &SimpleGraph,
    classes: &Partition,
    class_cliques: bool,
) -> Result<SimpleGraph> {
    let n = base.vertex_count();
    if classes.ground_size() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: classes.ground_size(),
        });
    }
    let k = classes.len();
    let mut lifted = vec![false; k * k];
    for (u, v) in base.edges() {
        let (p, q) = (classes.block_of(u), classes.block_of(v));
        lifted[p * k + q] = true;
        lifted[q * k + p] = true;
    }
    if class_cliques {
        for p in 0..k {
            lifted[p * k + p] = true;
        }
    }
    let mut g = SimpleGraph::from_fn(n, |u, v| {
        lifted[classes.block_of(u) * k + classes.block_of(v)]
    });
    g.group = base.group.clone();
    Ok(g)
}

/// Base graph in the super-graph hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseGraph {
    Power,
    Enhanced,
    Commuting,
}

/// Equivalence relation used to lift a base graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Equality,
    Conjugacy,
    Order,
}

impl BaseGraph {
    pub const ALL: [BaseGraph; 3] = [BaseGraph::Power, BaseGraph::Enhanced, BaseGraph::Commuting];

    pub fn build(self, group: &GroupTable) -> SimpleGraph {
        match self {
            BaseGraph::Power => power_graph(group),
            BaseGraph::Enhanced => enhanced_power_graph(group),
            BaseGraph::Commuting => commuting_graph(group),
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            BaseGraph::Power => "power",
            BaseGraph::Enhanced => "enhanced",
            BaseGraph::Commuting => "commuting",
        }
    }
}

impl Relation {
    pub const ALL: [Relation; 3] = [Relation::Equality, Relation::Conjugacy, Relation::Order];

    pub fn partition(self, group: &GroupTable) -> Partition {
        match self {
            Relation::Equality => group.equality_partition(),
            Relation::Conjugacy => group.conjugacy_classes(),
            Relation::Order => group.order_partition(),
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Relation::Equality => "equality",
            Relation::Conjugacy => "conjugacy",
            Relation::Order => "order",
        }
    }
}

impl fmt::Display for BaseGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for BaseGraph {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "power" | "p" => Ok(BaseGraph::Power),
            "enhanced" | "enhanced-power" | "pe" => Ok(BaseGraph::Enhanced),
            "commuting" | "com" => Ok(BaseGraph::Commuting),
            other => Err(format!(
                "unknown base graph `{other}` (expected power, enhanced or commuting)"
            )),
        }
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "equality" | "eq" => Ok(Relation::Equality),
            "conjugacy" | "conj" => Ok(Relation::Conjugacy),
            "order" | "same-order" => Ok(Relation::Order),
            other => Err(format!(
                "unknown relation `{other}` (expected equality, conjugacy or order)"
            )),
        }
    }
}

/// One of the nine graphs `relation`-super-`base` on `group`, with class cliques.
pub fn named_super_graph(group: &GroupTable, base: BaseGraph, relation: Relation) -> SimpleGraph {
    named_super_graph_with(group, base, relation, true)
}

pub fn named_super_graph_with(
    group: &GroupTable,
    base: BaseGraph,
    relation: Relation,
    class_cliques: bool,
) -> SimpleGraph {
    super_graph(
        &base.build(group),
        &relation.partition(group),
        class_cliques,
    )
    .expect("partition and base graph share the group's index space")
}

/// Spanning-subgraph containment among the nine named super graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchyReport {
    /// Row/column labels, `(base, relation)` in base-major order.
    pub graphs: Vec<(BaseGraph, Relation)>,
    pub edge_counts: Vec<usize>,
    /// `contains[i][j]` is true when graph `i` is a spanning subgraph of graph `j`.
    pub contains: Vec<Vec<bool>>,
}

impl HierarchyReport {
    fn index(&self, base: BaseGraph, relation: Relation) -> usize {
        self.graphs
            .iter()
            .position(|&g| g == (base, relation))
            .expect("all nine graphs are present")
    }

    pub fn is_subgraph(&self, small: (BaseGraph, Relation), big: (BaseGraph, Relation)) -> bool {
        self.contains[self.index(small.0, small.1)][self.index(big.0, big.1)]
    }

    /// Power ⊆ enhanced ⊆ commuting for every relation.
    pub fn base_chain_holds(&self) -> bool {
        Relation::ALL.iter().all(|&r| {
            self.is_subgraph((BaseGraph::Power, r), (BaseGraph::Enhanced, r))
                && self.is_subgraph((BaseGraph::Enhanced, r), (BaseGraph::Commuting, r))
        })
    }

    /// The equality graph is contained in its conjugacy and order lifts.
    pub fn relation_monotone(&self) -> bool {
        BaseGraph::ALL.iter().all(|&b| {
            self.is_subgraph((b, Relation::Equality), (b, Relation::Conjugacy))
                && self.is_subgraph((b, Relation::Equality), (b, Relation::Order))
        })
    }

    /// Number of pairwise distinct graphs among the nine.
    pub fn distinct_count(&self) -> usize {
        (0..self.graphs.len())
            .filter(|&i| (0..i).all(|j| !(self.contains[i][j] && self.contains[j][i])))
            .count()
    }
}

pub fn hierarchy_report(group: &GroupTable) -> HierarchyReport {
    let bases: Vec<SimpleGraph> = BaseGraph::ALL.iter().map(|b| b.build(group)).collect();
    let partitions: Vec<Partition> = Relation::ALL.iter().map(|r| r.partition(group)).collect();
    let mut graphs = Vec::new();
    let mut built = Vec::new();
    for (b, base) in BaseGraph::ALL.iter().zip(&bases) {
        for (r, classes) in Relation::ALL.iter().zip(&partitions) {
            graphs.push((*b, *r));
            built.push(super_graph(base, classes, true).expect("same index space"));
        }
    }
    let contains = built
        .iter()
        .map(|a| built.iter().map(|b| a.is_spanning_subgraph_of(b)).collect())
        .collect();
    HierarchyReport {
        graphs,
        edge_counts: built.iter().map(SimpleGraph::edge_count).collect(),
        contains,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, Family};

    fn group(f: Family, n: usize) -> GroupTable {
        build_group(f, n).unwrap()
    }

    fn brute_power_graph(g: &GroupTable) -> SimpleGraph {
        SimpleGraph::from_fn(g.order(), |x, y| {
            (1..=g.order()).any(|m| g.pow(y, m) == x || g.pow(x, m) == y)
        })
    }

    #[test]
    fn edge_bookkeeping() {
        let mut g = SimpleGraph::empty(70);
        g.add_edge(3, 68);
        g.add_edge(68, 3);
        g.add_edge(5, 5);
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(68, 3));
        assert_eq!(g.neighbors(3).collect::<Vec<_>>(), [68]);
        assert_eq!(g.component_count(), 69);
        g.check_invariants().unwrap();
    }

    #[test]
    fn power_graph_examples() {
        let z4 = group(Family::Cyclic, 4);
        assert!(power_graph(&z4).is_complete());

        let d6 = group(Family::Dihedral, 3);
        let p = power_graph(&d6);
        assert_eq!(p.edge_count(), 6);
        assert!(p.is_universal(0));
        assert!(p.has_edge(1, 2));
        assert_eq!(p, brute_power_graph(&d6));

        let trivial = group(Family::Cyclic, 1);
        let p = power_graph(&trivial);
        assert_eq!((p.vertex_count(), p.edge_count()), (1, 0));
    }

    #[test]
    fn power_graph_matches_brute_force() {
        for (f, n) in [
            (Family::Quaternion, 3),
            (Family::Semidihedral, 2),
            (Family::Dihedral, 6),
        ] {
            let g = group(f, n);
            assert_eq!(power_graph(&g), brute_power_graph(&g));
        }
    }

    #[test]
    fn enhanced_power_graph_examples() {
        let d6 = group(Family::Dihedral, 3);
        assert_eq!(enhanced_power_graph(&d6), power_graph(&d6));
        assert!(enhanced_power_graph(&group(Family::Cyclic, 7)).is_complete());

        let q8 = group(Family::Quaternion, 2);
        let pe = enhanced_power_graph(&q8);
        assert!(pe.is_universal(0) && pe.is_universal(q8.rotation(2)));
        let [a, b, ab] = [
            q8.rotation(1),
            q8.reflection(0).unwrap(),
            q8.reflection(1).unwrap(),
        ];
        for x in [a, b, ab] {
            assert!(pe.is_clique(&q8.cyclic_subgroup(x)));
        }
        assert!(!pe.has_edge(a, b) && !pe.has_edge(b, ab));
        // Three K_4's sharing the edge {e, a^2}: 3 * 6 - 2.
        assert_eq!(pe.edge_count(), 16);
    }

    #[test]
    fn enhanced_power_graph_matches_definition() {
        // x ~ y iff some <z> contains both.
        for (f, n) in [
            (Family::Quaternion, 3),
            (Family::Semidihedral, 3),
            (Family::Dihedral, 8),
        ] {
            let g = group(f, n);
            let subgroups: Vec<Vec<usize>> = (0..g.order()).map(|z| g.cyclic_subgroup(z)).collect();
            let brute = SimpleGraph::from_fn(g.order(), |x, y| {
                subgroups.iter().any(|h| h.contains(&x) && h.contains(&y))
            });
            assert_eq!(enhanced_power_graph(&g), brute);
        }
    }

    #[test]
    fn commuting_graph_examples() {
        assert!(commuting_graph(&group(Family::Cyclic, 6)).is_complete());

        let d6 = group(Family::Dihedral, 3);
        let c = commuting_graph(&d6);
        assert!(c.is_universal(0));
        assert!(c.has_edge(1, 2));
        assert!(!c.has_edge(3, 4) && !c.has_edge(3, 5) && !c.has_edge(4, 5));

        let sd16 = group(Family::Semidihedral, 2);
        let c = commuting_graph(&sd16);
        for v in 1..sd16.order() {
            assert!(c.has_edge(v, 0));
            if v != 4 {
                assert!(c.has_edge(v, 4));
            }
        }
    }

    #[test]
    fn super_graph_over_equality_is_identity() {
        let q12 = group(Family::Quaternion, 3);
        let base = commuting_graph(&q12);
        for cliques in [true, false] {
            assert_eq!(
                super_graph(&base, &q12.equality_partition(), cliques).unwrap(),
                base
            );
        }
    }

    #[test]
    fn super_graph_clique_convention() {
        let d6 = group(Family::Dihedral, 3);
        let pe = enhanced_power_graph(&d6);
        let classes = d6.conjugacy_classes();
        let with = super_graph(&pe, &classes, true).unwrap();
        assert_eq!(with.edge_count(), 9);
        assert!(with.is_universal(0));
        assert!(with.is_clique(&[3, 4, 5]));
        let literal = super_graph(&pe, &classes, false).unwrap();
        assert_eq!(literal.edge_count(), 6);
        assert!(!literal.has_edge(3, 4));
    }

    #[test]
    fn super_graph_dimension_mismatch() {
        let d6 = group(Family::Dihedral, 3);
        let err = super_graph(&power_graph(&d6), &Partition::discrete(5), true).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 6,
                found: 5
            }
        );
    }

    #[test]
    fn named_super_graph_examples() {
        let sd16 = group(Family::Semidihedral, 2);
        let cscom = named_super_graph(&sd16, BaseGraph::Commuting, Relation::Conjugacy);
        let ab = sd16.reflection(1).unwrap();
        let mut closed: Vec<usize> = cscom.neighbors(ab).chain([ab]).collect();
        closed.sort_unstable();
        let mut expected = vec![0, 4];
        expected.extend(
            (0..8)
                .filter(|i| i % 2 == 1)
                .map(|i| sd16.reflection(i).unwrap()),
        );
        assert_eq!(closed, expected);

        let d6 = group(Family::Dihedral, 3);
        assert_eq!(
            named_super_graph(&d6, BaseGraph::Enhanced, Relation::Equality),
            enhanced_power_graph(&d6)
        );

        let q8 = group(Family::Quaternion, 2);
        let csep = named_super_graph(&q8, BaseGraph::Enhanced, Relation::Conjugacy);
        assert!(csep.is_universal(0) && csep.is_universal(2));
        for pair in [[1, 3], [4, 6], [5, 7]] {
            assert!(csep.has_edge(pair[0], pair[1]));
            assert_eq!(csep.degree(pair[0]), 3);
        }
        assert_eq!(csep.edge_count(), 16);
    }

    #[test]
    fn hierarchy_examples() {
        let d6 = hierarchy_report(&group(Family::Dihedral, 3));
        assert!(d6.base_chain_holds());
        assert!(d6.relation_monotone());

        let z5 = hierarchy_report(&group(Family::Cyclic, 5));
        assert!(z5.edge_counts.iter().all(|&e| e == 10));
        assert_eq!(z5.distinct_count(), 1);

        let sd16 = hierarchy_report(&group(Family::Semidihedral, 2));
        assert!(sd16.is_subgraph(
            (BaseGraph::Enhanced, Relation::Conjugacy),
            (BaseGraph::Commuting, Relation::Conjugacy)
        ));
    }

    #[test]
    fn permuted_rejects_non_permutations() {
        let g = SimpleGraph::from_edges(3, [(0, 1)]);
        assert!(g.permuted(&[0, 0, 1]).is_err());
        assert!(g.permuted(&[0, 1]).is_err());
        let h = g.permuted(&[2, 0, 1]).unwrap();
        assert!(h.has_edge(2, 0) && h.edge_count() == 1);
    }
}
