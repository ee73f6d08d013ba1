//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use supergraph::closed_form::predicted_tree_count;
use supergraph::spectral::{
    integral_spectrum_by_nullity, spanning_tree_counts, spectrum_of_char_poly,
};
use supergraph::{
    analyze, build_group, char_poly, commuting_graph, enhanced_power_graph, integral_spectrum,
    laplacian, named_super_graph, nullity, power_graph, structural_graph, BaseGraph, Error, Family,
    GraphKind, Relation, SimpleGraph, SpectralSummary, SpectrumMultiset, VerificationReport,
};

use common::{cofactor_char_poly, enumerate_spanning_trees, graph_from_bits};

const CASE_LIMIT_D_Q: Duration = Duration::from_secs(1);
const CASE_LIMIT_SD: Duration = Duration::from_secs(60);
const LARGE_CASE_LIMIT: Duration = Duration::from_secs(600);
const RANDOM_GRAPHS: usize = 240;

type Outcome = Result<String, String>;

fn pow(base: u64, exp: u64) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

/// Expected spectrum and tree count, written out per criterion.
fn expected(kind: GraphKind, family: Family, n: u64) -> (Vec<(u64, usize)>, BigUint) {
    let m = |x: u64| x as usize;
    let odd = n % 2 == 1;
    match (kind, family) {
        (GraphKind::Csep, Family::Dihedral) if odd => (
            vec![(2 * n, 1), (n + 1, m(n - 1)), (n, m(n - 2)), (1, 1), (0, 1)],
            pow(n, n - 2) * pow(n + 1, n - 1),
        ),
        (GraphKind::Csep, Family::Dihedral) => (
            vec![
                (2 * n, 1),
                (n, m(n - 2)),
                (n / 2 + 1, m(n - 2)),
                (1, 2),
                (0, 1),
            ],
            pow(n, n - 2) * pow(n / 2 + 1, n - 2),
        ),
        (GraphKind::Csep, Family::Quaternion) if odd => (
            vec![
                (4 * n, 2),
                (2 * n + 2, m(2 * n - 1)),
                (2 * n, m(2 * n - 3)),
                (2, 1),
                (0, 1),
            ],
            pow(2, 2 * n) * pow(n, 2 * n - 2) * pow(2 * n + 2, 2 * n - 1),
        ),
        (GraphKind::Csep, Family::Quaternion) => (
            vec![
                (4 * n, 2),
                (2 * n, m(2 * n - 3)),
                (n + 2, m(2 * n - 2)),
                (2, 2),
                (0, 1),
            ],
            pow(2, 2 * n + 1) * pow(n, 2 * n - 2) * pow(n + 2, 2 * n - 2),
        ),
        (GraphKind::Csep, Family::Semidihedral) if odd => (
            vec![
                (8 * n, 1),
                (6 * n, 1),
                (4 * n, m(4 * n - 3)),
                (2 * n + 2, m(2 * n - 1)),
                (n + 1, m(2 * n - 2)),
                (2, 1),
                (1, 2),
                (0, 1),
            ],
            3u32 * pow(2, 8 * n - 4)
                * pow(n, 4 * n - 2)
                * pow(2 * n + 2, 2 * n - 1)
                * pow(n + 1, 2 * n - 2),
        ),
        (GraphKind::Csep, Family::Semidihedral) => (
            vec![
                (8 * n, 1),
                (6 * n, 1),
                (4 * n, m(4 * n - 3)),
                (2 * n + 2, m(2 * n - 1)),
                (2 * n + 1, m(2 * n - 1)),
                (2, 1),
                (1, 1),
                (0, 1),
            ],
            3u32 * pow(2, 8 * n - 4)
                * pow(n, 4 * n - 2)
                * pow(2 * n + 2, 2 * n - 1)
                * pow(2 * n + 1, 2 * n - 1),
        ),
        (GraphKind::Cscom, Family::Semidihedral) if odd => (
            vec![
                (8 * n, 4),
                (4 * n + 4, m(4 * n - 1)),
                (4 * n, m(4 * n - 5)),
                (4, 1),
                (0, 1),
            ],
            pow(2, 8 * n + 1) * pow(n, 4 * n - 2) * pow(4 * n + 4, 4 * n - 1),
        ),
        (GraphKind::Cscom, Family::Semidihedral) => (
            vec![
                (8 * n, 2),
                (4 * n, m(4 * n - 3)),
                (2 * n + 2, m(4 * n - 2)),
                (2, 2),
                (0, 1),
            ],
            pow(2, 8 * n - 1) * pow(n, 4 * n - 2) * pow(2 * n + 2, 4 * n - 2),
        ),
        _ => unreachable!("no closed form for {kind} on {family}"),
    }
}

struct Case {
    kind: GraphKind,
    family: Family,
    n: usize,
    graph: SimpleGraph,
    spectrum: SpectrumMultiset,
    trees: BigUint,
    summary: Result<SpectralSummary, Error>,
    elapsed: Duration,
}

impl Case {
    fn build(kind: GraphKind, family: Family, n: usize) -> Case {
        let graph = named_super_graph(
            &build_group(family, n).unwrap(),
            kind.base(),
            kind.relation(),
        );
        let (pairs, trees) = expected(kind, family, n as u64);
        let start = Instant::now();
        let summary = analyze(&graph);
        Case {
            kind,
            family,
            n,
            graph,
            spectrum: SpectrumMultiset::new(pairs),
            trees,
            summary,
            elapsed: start.elapsed(),
        }
    }

    fn name(&self) -> String {
        format!("{}({})", self.kind, self.family.display_name(self.n))
    }
}

struct Sweep {
    dihedral: Vec<Case>,
    quaternion: Vec<Case>,
    semidihedral: Vec<Case>,
}

impl Sweep {
    fn run() -> Sweep {
        let dihedral = (3..=25)
            .map(|n| Case::build(GraphKind::Csep, Family::Dihedral, n))
            .collect();
        let quaternion = (2..=16)
            .map(|n| Case::build(GraphKind::Csep, Family::Quaternion, n))
            .collect();
        let semidihedral = GraphKind::ALL
            .into_iter()
            .flat_map(|kind| (2..=10).map(move |n| Case::build(kind, Family::Semidihedral, n)))
            .collect();
        Sweep {
            dihedral,
            quaternion,
            semidihedral,
        }
    }

    fn all(&self) -> impl Iterator<Item = &Case> {
        self.dihedral
            .iter()
            .chain(&self.quaternion)
            .chain(&self.semidihedral)
    }
}

fn spectra_match(cases: &[Case], limit: Duration) -> Outcome {
    let mut slowest = Duration::ZERO;
    for c in cases {
        let computed = c
            .summary
            .as_ref()
            .map_err(|e| format!("{}: {e}", c.name()))?;
        if computed.spectrum != c.spectrum {
            return Err(format!(
                "{}: computed {} expected {}",
                c.name(),
                computed.spectrum,
                c.spectrum
            ));
        }
        if c.elapsed > limit {
            return Err(format!(
                "{}: took {:.2?}, limit {limit:?}",
                c.name(),
                c.elapsed
            ));
        }
        slowest = slowest.max(c.elapsed);
    }
    Ok(format!(
        "{} cases exact, slowest {:.3?}",
        cases.len(),
        slowest
    ))
}

fn criterion_4(sweep: &Sweep) -> Outcome {
    let mut count = 0;
    for c in sweep.all() {
        let s = c
            .summary
            .as_ref()
            .map_err(|e| format!("{}: {e}", c.name()))?;
        if !s.trees.agree() {
            return Err(format!(
                "{}: tree-count routes disagree {:?}",
                c.name(),
                s.trees
            ));
        }
        if s.trees.by_cofactor != c.trees {
            return Err(format!(
                "{}: computed {} expected {}",
                c.name(),
                s.trees.by_cofactor,
                c.trees
            ));
        }
        let library = predicted_tree_count(c.kind, c.family, c.n).map_err(|e| e.to_string())?;
        if library != c.trees {
            return Err(format!("{}: library formula gives {library}", c.name()));
        }
        count += 1;
    }
    let d6 = &sweep.dihedral[0];
    let cscom16 = sweep
        .semidihedral
        .iter()
        .find(|c| c.kind == GraphKind::Cscom && c.n == 2)
        .unwrap();
    Ok(format!(
        "{count} cases; CSEP(D_6) = {}, CSCom(SD_16) = {}",
        d6.trees, cscom16.trees
    ))
}

fn verify_with_binary(
    kind: GraphKind,
    family: Family,
    range: &str,
) -> Result<(VerificationReport, Option<i32>, String), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("report.json");
    let out = Command::new(env!("CARGO_BIN_EXE_supergraph"))
        .args([
            "verify",
            "--kind",
            kind.short_name(),
            "--family",
            family.short_name(),
            "--range",
            range,
            "--strict",
        ])
        .arg("--out")
        .arg(&path)
        .output()
        .map_err(|e| e.to_string())?;
    let bytes = std::fs::read(&path).map_err(|e| format!("reading report: {e}"))?;
    let report: VerificationReport = serde_json::from_slice(&bytes).map_err(|e| e.to_string())?;
    Ok((
        report,
        out.status.code(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    ))
}

fn criterion_5() -> Outcome {
    let sweeps = [
        (
            GraphKind::Csep,
            Family::Dihedral,
            "3..25",
            Some(("2n+1", 1)),
        ),
        (GraphKind::Csep, Family::Quaternion, "2..16", None),
        (
            GraphKind::Csep,
            Family::Semidihedral,
            "2..10",
            Some(("8n-1", -1)),
        ),
        (GraphKind::Cscom, Family::Semidihedral, "2..10", None),
    ];
    let mut flagged = Vec::new();
    for (kind, family, range, defect) in sweeps {
        let (report, code, stdout) = verify_with_binary(kind, family, range)?;
        let label = format!("{kind} on {family}");
        if !report.all_ok() {
            return Err(format!("{label}: some case has no matching variant"));
        }
        let mismatches = report.theorem_mismatches();
        let listed = stdout
            .lines()
            .filter(|l| l.starts_with("theorem mismatch"))
            .count();
        if listed != mismatches.len() {
            return Err(format!(
                "{label}: {listed} listed, {} in report",
                mismatches.len()
            ));
        }
        match defect {
            None if !mismatches.is_empty() || code != Some(0) => {
                return Err(format!(
                    "{label}: unexpected mismatches {mismatches:?} (exit {code:?})"
                ));
            }
            None => {}
            Some((degree, offset)) => {
                let even: Vec<usize> = report
                    .cases
                    .iter()
                    .map(|c| c.n)
                    .filter(|n| n % 2 == 0)
                    .collect();
                let ns: Vec<usize> = mismatches.iter().map(|m| m.n).collect();
                if ns != even {
                    return Err(format!(
                        "{label}: mismatches at {ns:?}, expected even n {even:?}"
                    ));
                }
                if let Some(m) = mismatches
                    .iter()
                    .find(|m| m.degree_expr != degree || m.degree != m.order as i64 + offset)
                {
                    return Err(format!("{label}: unexpected defect {}", m.description));
                }
                if code != Some(1) {
                    return Err(format!("{label}: --strict exited with {code:?}"));
                }
                flagged.push(format!("{label} degree {degree} at {} even n", ns.len()));
            }
        }
    }
    Ok(format!("flagged only: {}", flagged.join("; ")))
}

fn criterion_6(sweep: &Sweep) -> Outcome {
    let mut count = 0;
    for c in sweep.all() {
        let structural = structural_graph(c.kind, c.family, c.n).map_err(|e| e.to_string())?;
        if structural != c.graph {
            return Err(format!("{}: structural build differs", c.name()));
        }
        count += 1;
    }
    Ok(format!("{count} graphs identical edge for edge"))
}

fn criterion_7(sweep: &Sweep) -> Outcome {
    let mut count = 0;
    for c in sweep.all() {
        integral_spectrum(&laplacian(&c.graph)).map_err(|e| format!("{}: {e}", c.name()))?;
        count += 1;
    }
    Ok(format!("{count} graphs Laplacian-integral"))
}

fn oracle_check(g: &SimpleGraph, label: &str) -> Result<(), String> {
    let l = laplacian(g);
    let p = char_poly(&l).map_err(|e| e.to_string())?;
    if p.coeffs() != cofactor_char_poly(g).as_slice() {
        return Err(format!(
            "{label}: char poly {p} differs from cofactor expansion"
        ));
    }
    let counts = spanning_tree_counts(g).map_err(|e| e.to_string())?;
    let enumerated = enumerate_spanning_trees(g);
    if !counts.agree() || counts.by_cofactor != enumerated {
        return Err(format!(
            "{label}: trees {counts:?} vs enumeration {enumerated}"
        ));
    }
    let n = g.vertex_count() as u64;
    let (roots, _) = p.split_integer_roots((0..=n).rev());
    let by_nullity: Vec<(u64, usize)> = (0..=n)
        .rev()
        .map(|t| (t, nullity(&l.shifted(&BigInt::from(t)))))
        .filter(|&(_, m)| m > 0)
        .collect();
    if roots != by_nullity {
        return Err(format!(
            "{label}: deflation {roots:?} vs nullity {by_nullity:?}"
        ));
    }
    let consistent = match (spectrum_of_char_poly(&p), integral_spectrum_by_nullity(&l)) {
        (Ok(a), Ok(b)) => a == b,
        (Err(Error::NotIntegral { residual: a }), Err(Error::NotIntegral { residual: b })) => {
            a == b
        }
        _ => false,
    };
    if !consistent {
        return Err(format!("{label}: integral_spectrum strategies disagree"));
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let strategy = (
        1usize..=10,
        proptest::collection::vec(proptest::bool::ANY, 45),
    );
    let mut runner = TestRunner::deterministic();
    for k in 0..RANDOM_GRAPHS {
        let (n, bits) = strategy
            .new_tree(&mut runner)
            .map_err(|e| e.to_string())?
            .current();
        oracle_check(
            &graph_from_bits(n, &bits),
            &format!("random graph {k} on {n} vertices"),
        )?;
    }
    let mut family_graphs = 0;
    for family in Family::ALL {
        for n in family.min_parameter().. {
            if family.group_order(n) > 10 {
                break;
            }
            let g = build_group(family, n).unwrap();
            for base in BaseGraph::ALL {
                for relation in Relation::ALL {
                    let label = format!("{base}/{relation} on {}", family.display_name(n));
                    oracle_check(&named_super_graph(&g, base, relation), &label)?;
                    family_graphs += 1;
                }
            }
        }
    }
    Ok(format!(
        "{RANDOM_GRAPHS} random graphs and {family_graphs} family graphs agree with brute force"
    ))
}

fn criterion_9() -> Outcome {
    let mut groups = 0;
    for family in Family::ALL {
        for n in family.min_parameter().. {
            if family.group_order(n) > 100 {
                break;
            }
            let g = build_group(family, n).unwrap();
            let name = family.display_name(n);
            let (p, pe, com) = (
                power_graph(&g),
                enhanced_power_graph(&g),
                commuting_graph(&g),
            );
            if !p.is_spanning_subgraph_of(&pe) || !pe.is_spanning_subgraph_of(&com) {
                return Err(format!("{name}: base graph chain broken"));
            }
            let csep = named_super_graph(&g, BaseGraph::Enhanced, Relation::Conjugacy);
            let cscom = named_super_graph(&g, BaseGraph::Commuting, Relation::Conjugacy);
            if !csep.is_spanning_subgraph_of(&cscom) {
                return Err(format!("{name}: CSEP not contained in CSCom"));
            }
            groups += 1;
        }
    }
    Ok(format!("{groups} groups of order at most 100"))
}

fn criterion_10() -> Outcome {
    let n = 50;
    let g = named_super_graph(
        &build_group(Family::Semidihedral, n).unwrap(),
        BaseGraph::Commuting,
        Relation::Conjugacy,
    );
    let start = Instant::now();
    let spectrum = integral_spectrum(&laplacian(&g)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let (pairs, _) = expected(GraphKind::Cscom, Family::Semidihedral, n as u64);
    if spectrum != SpectrumMultiset::new(pairs) {
        return Err(format!("wrong spectrum {spectrum}"));
    }
    if elapsed > LARGE_CASE_LIMIT {
        return Err(format!("took {elapsed:.1?}, limit {LARGE_CASE_LIMIT:?}"));
    }
    Ok(format!(
        "CSCom(SD_400) spectrum {} in {elapsed:.2?}",
        spectrum
    ))
}

fn report(id: usize, title: &str, check: impl FnOnce() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let (tag, detail) = match &outcome {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("criterion {id:>2} {tag}  {title}: {detail}");
    outcome.is_ok()
}

fn main() -> ExitCode {
    let sweep = Sweep::run();
    let results = [
        report(1, "spectrum reproduction, CSEP(D_2n), n = 3..25", || {
            spectra_match(&sweep.dihedral, CASE_LIMIT_D_Q)
        }),
        report(2, "spectrum reproduction, CSEP(Q_4n), n = 2..16", || {
            spectra_match(&sweep.quaternion, CASE_LIMIT_D_Q)
        }),
        report(
            3,
            "spectrum reproduction, CSEP/CSCom(SD_8n), n = 2..10",
            || spectra_match(&sweep.semidihedral, CASE_LIMIT_SD),
        ),
        report(4, "spanning-tree reproduction", || criterion_4(&sweep)),
        report(5, "discrepancy detection under --strict", criterion_5),
        report(6, "dual-path construction", || criterion_6(&sweep)),
        report(7, "L-integrality", || criterion_7(&sweep)),
        report(8, "oracle equivalence", criterion_8),
        report(9, "hierarchy invariants", criterion_9),
        report(10, "performance envelope", criterion_10),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
