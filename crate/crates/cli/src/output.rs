//! Serialized forms of every command's output.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use supergraph::{CaseRecord, Family, GroupTable, SimpleGraph, SpectralSummary, SpectrumMultiset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub family: Family,
    pub n: usize,
    pub name: String,
    pub order: usize,
    pub elements: Vec<String>,
    pub element_orders: Vec<usize>,
    pub center: Vec<String>,
    pub conjugacy_classes: Vec<Vec<String>>,
    pub maximal_cyclic_subgroups: Vec<Vec<String>>,
}

impl GroupReport {
    pub fn new(g: &GroupTable) -> Self {
        let names = |xs: &[usize]| {
            xs.iter()
                .map(|&x| g.label(x).to_string())
                .collect::<Vec<_>>()
        };
        let center: Vec<usize> = g.center().into_iter().collect();
        GroupReport {
            family: g.family(),
            n: g.parameter(),
            name: g.family().display_name(g.parameter()),
            order: g.order(),
            elements: g.labels().to_vec(),
            element_orders: (0..g.order()).map(|x| g.element_order(x)).collect(),
            center: names(&center),
            conjugacy_classes: g
                .conjugacy_classes()
                .blocks()
                .iter()
                .map(|b| names(b))
                .collect(),
            maximal_cyclic_subgroups: g
                .maximal_cyclic_subgroups()
                .iter()
                .map(|c| names(c))
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let set = |xs: &[String]| format!("{{{}}}", xs.join(", "));
        let mut out = format!(
            "{}: order {}\ncenter: {}\n",
            self.name,
            self.order,
            set(&self.center)
        );
        let _ = writeln!(out, "conjugacy classes ({}):", self.conjugacy_classes.len());
        for c in &self.conjugacy_classes {
            let _ = writeln!(out, "  {}", set(c));
        }
        let _ = writeln!(
            out,
            "maximal cyclic subgroups ({}):",
            self.maximal_cyclic_subgroups.len()
        );
        for c in &self.maximal_cyclic_subgroups {
            let _ = writeln!(out, "  {}", set(c));
        }
        out
    }
}

/// The spectrum artifact; `trees` is a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub family: Family,
    pub n: usize,
    pub graph: String,
    pub order: usize,
    pub edges: usize,
    pub spectrum: SpectrumMultiset,
    pub char_poly_factored: String,
    pub trees: String,
}

impl SpectrumReport {
    pub fn new(family: Family, n: usize, graph: String, s: &SpectralSummary) -> Self {
        SpectrumReport {
            family,
            n,
            graph,
            order: s.order,
            edges: s.edges,
            spectrum: s.spectrum.clone(),
            char_poly_factored: s.spectrum.factored(),
            trees: s.trees.by_cofactor.to_string(),
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "graph: {} on {}\norder: {}\nedges: {}\nspectrum: {}\ncharacteristic polynomial: {}\nspanning trees: {}\n",
            self.graph,
            self.family.display_name(self.n),
            self.order,
            self.edges,
            self.spectrum,
            self.char_poly_factored,
            self.trees
        )
    }
}

pub fn to_dot(g: &SimpleGraph, name: &str) -> String {
    let mut out = format!("graph \"{name}\" {{\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  {v} [label=\"{}\"];", g.vertex_label(v));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

pub fn to_edge_list(g: &SimpleGraph) -> String {
    g.edges().map(|(u, v)| format!("{u} {v}\n")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub graph: String,
    pub labels: Vec<String>,
    pub adjacency: Vec<Vec<usize>>,
}

impl GraphExport {
    pub fn new(g: &SimpleGraph, name: &str) -> Self {
        GraphExport {
            graph: name.to_string(),
            labels: (0..g.vertex_count()).map(|v| g.vertex_label(v)).collect(),
            adjacency: (0..g.vertex_count())
                .map(|v| g.neighbors(v).collect())
                .collect(),
        }
    }
}

/// One CSV line of a sweep. Match flags are empty when no closed form applies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub family: Family,
    pub kind: String,
    pub n: usize,
    pub order: usize,
    pub edges: usize,
    pub spectrum: String,
    pub trees: String,
    pub structural_match: Option<bool>,
    pub theorem_match: Option<bool>,
    pub corollary_match: Option<bool>,
    pub tree_match: Option<bool>,
}

impl SweepRow {
    pub fn from_case(c: &CaseRecord) -> Self {
        let matches = |source| {
            c.variants
                .iter()
                .find(|v| v.prediction.source == source)
                .map(|v| v.matches)
        };
        SweepRow {
            family: c.family,
            kind: c.kind.to_string(),
            n: c.n,
            order: c.order,
            edges: c.edges,
            spectrum: c
                .spectrum
                .as_ref()
                .map_or_else(|| "not integral".to_string(), SpectrumMultiset::compact),
            trees: c.computed_trees.to_string(),
            structural_match: Some(c.structural_match),
            theorem_match: matches(supergraph::Source::TheoremPolynomial),
            corollary_match: matches(supergraph::Source::CorollarySpectrum),
            tree_match: Some(c.tree_match),
        }
    }
}
