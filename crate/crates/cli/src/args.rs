use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use supergraph::{BaseGraph, Family, GraphKind, Relation};

#[derive(Debug, Parser)]
#[command(
    name = "supergraph",
    version,
    about = "Exact Laplacian spectra of super graphs on finite groups"
)]
pub struct Cli {
    /// Worker threads for parallel sections.
    #[arg(long, global = true, env = "SUPERGRAPH_THREADS", value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print order, center, conjugacy classes and maximal cyclic subgroups.
    Group {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Exact spectrum, factored characteristic polynomial and tree count.
    Spectrum {
        #[command(flatten)]
        graph: GraphSelector,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare computed spectra and tree counts with the closed forms.
    Verify {
        #[arg(long)]
        kind: GraphKind,
        #[arg(long)]
        family: Family,
        /// Inclusive parameter range, e.g. `2..10`.
        #[arg(long)]
        range: ParamRange,
        /// Also fail when a characteristic-polynomial statement is contradicted.
        #[arg(long)]
        strict: bool,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate spectra over a parameter range as CSV.
    Sweep {
        #[command(flatten)]
        graph: GraphSelector,
        #[arg(long)]
        range: ParamRange,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a graph as DOT, an edge list or JSON.
    Export {
        #[command(flatten)]
        graph: GraphSelector,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Either a named kind or an explicit base graph and relation.
#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("selector").required(true).args(["kind", "base"])))]
pub struct GraphSelector {
    #[arg(long, conflicts_with_all = ["base", "relation"])]
    pub kind: Option<GraphKind>,
    #[arg(long, requires = "relation")]
    pub base: Option<BaseGraph>,
    #[arg(long, requires = "base")]
    pub relation: Option<Relation>,
    #[arg(long)]
    pub family: Family,
    /// Do not force each relation class to be a clique.
    #[arg(long)]
    pub literal: bool,
}

impl GraphSelector {
    pub fn base_relation(&self) -> (BaseGraph, Relation) {
        match (self.kind, self.base, self.relation) {
            (Some(kind), _, _) => (kind.base(), kind.relation()),
            (None, Some(base), Some(relation)) => (base, relation),
            _ => unreachable!("clap enforces a complete selector"),
        }
    }

    /// The kind, when closed forms apply to the selected graph.
    pub fn closed_form_kind(&self) -> Option<GraphKind> {
        let kind = match (self.kind, self.base_relation()) {
            (Some(kind), _) => kind,
            (None, (BaseGraph::Enhanced, Relation::Conjugacy)) => GraphKind::Csep,
            (None, (BaseGraph::Commuting, Relation::Conjugacy)) => GraphKind::Cscom,
            _ => return None,
        };
        (!self.literal && kind.supports(self.family)).then_some(kind)
    }

    pub fn graph_name(&self) -> String {
        let name = match self.kind {
            Some(kind) => kind.to_string(),
            None => {
                let (base, relation) = self.base_relation();
                format!("{base}/{relation}")
            }
        };
        if self.literal {
            format!("{name} (literal)")
        } else {
            name
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Edgelist,
    Json,
}

/// Inclusive range written `a..b`, `a..=b` or `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamRange {
    pub start: usize,
    pub end: usize,
}

impl ParamRange {
    pub fn to_range(self) -> RangeInclusive<usize> {
        self.start..=self.end
    }
}

impl FromStr for ParamRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("invalid bound `{t}`: {e}"))
        };
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = parse(s)?;
                (n, n)
            }
        };
        if start > end {
            return Err(format!("empty range `{s}`"));
        }
        Ok(ParamRange { start, end })
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}
