//! `supergraph` command-line tool.
//!
//! Exit status: 0 on success, 1 when `verify` finds a mismatch (or, with
//! `--strict`, a contradicted characteristic-polynomial statement), 2 on any
//! other error.

mod args;
mod output;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use rayon::prelude::*;
use supergraph::{analyze, build_group, named_super_graph_with, verify, Family, SimpleGraph};

use args::{Cli, Command, ExportFormat, GraphSelector, ParamRange, ReportFormat};
use output::{to_dot, to_edge_list, GraphExport, GroupReport, SpectrumReport, SweepRow};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads as usize)
            .build_global()
        {
            eprintln!("error: configuring thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Runs one command; `Ok(false)` signals a verification failure.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::Group { family, n, format } => {
            let report = GroupReport::new(&build_group(family, n)?);
            let text = match format {
                ReportFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
                ReportFormat::Text => report.to_text(),
            };
            emit(None, &text)?;
        }
        Command::Spectrum {
            graph,
            n,
            format,
            out,
        } => {
            let g = build(&graph, n)?;
            let summary = analyze(&g).with_context(|| describe(&graph, n))?;
            let report = SpectrumReport::new(graph.family, n, graph.graph_name(), &summary);
            let text = match format {
                ReportFormat::Json => serde_json::to_string(&report)? + "\n",
                ReportFormat::Text => report.to_text(),
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Verify {
            kind,
            family,
            range,
            strict,
            out,
        } => {
            let report = verify(kind, family, range.to_range())?;
            if let Some(path) = out.as_deref() {
                emit(Some(path), &(serde_json::to_string_pretty(&report)? + "\n"))?;
            }
            let mut text = format!("{kind} on {family}, n = {range}\n{}", report.to_table());
            let mismatches = report.theorem_mismatches();
            for m in &mismatches {
                text.push_str(&format!("theorem mismatch: {}\n", m.description));
            }
            let ok = report.all_ok();
            text.push_str(if ok {
                "all cases match\n"
            } else {
                "some cases FAILED\n"
            });
            emit(None, &text)?;
            return Ok(ok && !(strict && !mismatches.is_empty()));
        }
        Command::Sweep { graph, range, out } => {
            let rows = sweep(&graph, range)?;
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                writer.serialize(row)?;
            }
            let bytes = writer.into_inner().context("flushing CSV")?;
            emit(out.as_deref(), &String::from_utf8(bytes)?)?;
        }
        Command::Export {
            graph,
            n,
            format,
            out,
        } => {
            let g = build(&graph, n)?;
            let name = format!("{}({})", graph.graph_name(), graph.family.display_name(n));
            let text = match format {
                ExportFormat::Dot => to_dot(&g, &name),
                ExportFormat::Edgelist => to_edge_list(&g),
                ExportFormat::Json => serde_json::to_string(&GraphExport::new(&g, &name))? + "\n",
            };
            emit(out.as_deref(), &text)?;
        }
    }
    Ok(true)
}

fn describe(graph: &GraphSelector, n: usize) -> String {
    format!("{} on {}", graph.graph_name(), graph.family.display_name(n))
}

fn build(graph: &GraphSelector, n: usize) -> Result<SimpleGraph> {
    let group = build_group(graph.family, n)?;
    let (base, relation) = graph.base_relation();
    Ok(named_super_graph_with(
        &group,
        base,
        relation,
        !graph.literal,
    ))
}

fn sweep(graph: &GraphSelector, range: ParamRange) -> Result<Vec<SweepRow>> {
    if let Some(kind) = graph.closed_form_kind() {
        let report = verify(kind, graph.family, range.to_range())?;
        return Ok(report.cases.iter().map(SweepRow::from_case).collect());
    }
    let min = graph.family.min_parameter().max(range.start);
    (min..=range.end)
        .into_par_iter()
        .map(|n| plain_row(graph, graph.family, n))
        .collect()
}

fn plain_row(graph: &GraphSelector, family: Family, n: usize) -> Result<SweepRow> {
    let g = build(graph, n)?;
    let (spectrum, trees) = match analyze(&g) {
        Ok(s) => (s.spectrum.compact(), s.trees.by_cofactor.to_string()),
        Err(supergraph::Error::NotIntegral { .. }) => (
            "not integral".to_string(),
            supergraph::spanning_tree_count(&g).to_string(),
        ),
        Err(e) => return Err(e.into()),
    };
    Ok(SweepRow {
        family,
        kind: graph.graph_name(),
        n,
        order: g.vertex_count(),
        edges: g.edge_count(),
        spectrum,
        trees,
        structural_match: None,
        theorem_match: None,
        corollary_match: None,
        tree_match: None,
    })
}

/// Write to `path`, or to stdout when absent.
fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .context("writing to stdout")
        }
    }
}
