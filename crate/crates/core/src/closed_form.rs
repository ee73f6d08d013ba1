//! Closed-form Laplacian spectra and spanning-tree counts of the conjugacy
//! super graphs, and verification of those formulas against exact
//! computation.
//!
//! Each supported case carries two symbolic spectra: the one implied by the
//! factored characteristic polynomial stated for it, and the one listed as
//! its eigenvalue table. For two even cases they disagree (the stated
//! polynomial has the wrong degree); both variants are kept and the
//! verifier reports which one the computation supports.

use std::fmt;
use std::ops::Add;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compose::{structural_graph, GraphKind};
use crate::error::{Error, Result};
use crate::graph::named_super_graph;
use crate::group::{build_group, Family};
use crate::spectral::{analyze, laplacian, nullities_at, SpectrumMultiset};

/// `slope * n + intercept`, where the slope may be a fraction (`n/2 + 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LinearExpr {
    slope_num: i64,
    slope_den: i64,
    intercept: i64,
}

const fn lin(slope: i64, intercept: i64) -> LinearExpr {
    LinearExpr {
        slope_num: slope,
        slope_den: 1,
        intercept,
    }
}

const fn half(slope: i64, intercept: i64) -> LinearExpr {
    LinearExpr {
        slope_num: slope,
        slope_den: 2,
        intercept,
    }
}

impl LinearExpr {
    pub const fn constant(c: i64) -> Self {
        lin(0, c)
    }

    /// Value at `n`, or `None` when the fractional slope does not divide.
    pub fn eval(&self, n: usize) -> Option<i64> {
        let scaled = self.slope_num * n as i64;
        (scaled % self.slope_den == 0).then(|| scaled / self.slope_den + self.intercept)
    }

    fn is_atom(&self) -> bool {
        self.slope_num == 0 || (self.intercept == 0 && self.slope_den == 1)
    }
}

impl Add for LinearExpr {
    type Output = LinearExpr;

    fn add(self, rhs: LinearExpr) -> LinearExpr {
        let den = self.slope_den * rhs.slope_den;
        let num = self.slope_num * rhs.slope_den + rhs.slope_num * self.slope_den;
        let g = num_integer::gcd(num, den).max(1);
        LinearExpr {
            slope_num: num / g,
            slope_den: den / g,
            intercept: self.intercept + rhs.intercept,
        }
    }
}

impl fmt::Display for LinearExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slope_num == 0 {
            return write!(f, "{}", self.intercept);
        }
        match self.slope_num {
            1 => write!(f, "n")?,
            -1 => write!(f, "-n")?,
            a => write!(f, "{a}n")?,
        }
        if self.slope_den != 1 {
            write!(f, "/{}", self.slope_den)?;
        }
        match self.intercept {
            0 => Ok(()),
            b if b > 0 => write!(f, "+{b}"),
            b => write!(f, "-{}", -b),
        }
    }
}

/// `(x - value)^multiplicity` in a closed form, or one column of an
/// eigenvalue table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymbolicTerm {
    pub value: LinearExpr,
    pub multiplicity: LinearExpr,
}

const fn term(value: LinearExpr, multiplicity: LinearExpr) -> SymbolicTerm {
    SymbolicTerm {
        value,
        multiplicity,
    }
}

/// `coefficient · Π base^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeFormula {
    pub coefficient: u64,
    pub factors: Vec<(LinearExpr, LinearExpr)>,
}

impl TreeFormula {
    pub fn eval(&self, n: usize) -> Option<BigUint> {
        let mut out = BigUint::from(self.coefficient);
        for (base, exp) in &self.factors {
            let b = u64::try_from(base.eval(n)?).ok()?;
            let e = u32::try_from(exp.eval(n)?).ok()?;
            out *= BigUint::from(b).pow(e);
        }
        Some(out)
    }
}

impl fmt::Display for TreeFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.coefficient != 1 {
            parts.push(self.coefficient.to_string());
        }
        for (base, exp) in &self.factors {
            let b = if base.is_atom() {
                base.to_string()
            } else {
                format!("({base})")
            };
            let e = if exp.is_atom() {
                exp.to_string()
            } else {
                format!("({exp})")
            };
            parts.push(format!("{b}^{e}"));
        }
        write!(f, "{}", parts.join(" * "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

/// Which form of the closed-form statement a prediction was read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Exponents of the factored characteristic polynomial.
    TheoremPolynomial,
    /// Multiplicity row of the eigenvalue table.
    CorollarySpectrum,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::TheoremPolynomial => "theorem polynomial",
            Source::CorollarySpectrum => "corollary spectrum",
        })
    }
}

/// Symbolic data for one (kind, family, parity) case.
#[derive(Debug, Clone)]
pub struct ClosedForm {
    pub theorem: Vec<SymbolicTerm>,
    pub corollary: Vec<SymbolicTerm>,
    pub trees: TreeFormula,
}

impl ClosedForm {
    pub fn terms(&self, source: Source) -> &[SymbolicTerm] {
        match source {
            Source::TheoremPolynomial => &self.theorem,
            Source::CorollarySpectrum => &self.corollary,
        }
    }

    /// Symbolic degree Σ m of a variant.
    pub fn degree(&self, source: Source) -> LinearExpr {
        self.terms(source)
            .iter()
            .fold(LinearExpr::constant(0), |acc, t| acc + t.multiplicity)
    }
}

/// The closed form for a supported case, `None` otherwise.
pub fn closed_form(kind: GraphKind, family: Family, parity: Parity) -> Option<ClosedForm> {
    use Parity::{Even, Odd};
    let c = LinearExpr::constant;
    let n = lin(1, 0);
    let tf = |coefficient: u64, factors: &[(LinearExpr, LinearExpr)]| TreeFormula {
        coefficient,
        factors: factors.to_vec(),
    };
    let form = match (kind, family, parity) {
        (GraphKind::Csep, Family::Dihedral, Odd) => ClosedForm {
            theorem: vec![
                term(c(0), c(1)),
                term(c(1), c(1)),
                term(lin(1, 1), lin(1, -1)),
                term(lin(2, 0), c(1)),
                term(n, lin(1, -2)),
            ],
            corollary: vec![
                term(c(0), c(1)),
                term(c(1), c(1)),
                term(n, lin(1, -2)),
                term(lin(1, 1), lin(1, -1)),
                term(lin(2, 0), c(1)),
            ],
            trees: tf(1, &[(n, lin(1, -2)), (lin(1, 1), lin(1, -1))]),
        },
        (GraphKind::Csep, Family::Dihedral, Even) => ClosedForm {
            theorem: vec![
                term(c(0), c(1)),
                term(c(1), c(2)),
                term(half(1, 1), lin(1, -1)),
                term(lin(2, 0), c(1)),
                term(n, lin(1, -2)),
            ],
            corollary: vec![
                term(c(0), c(1)),
                term(c(1), c(2)),
                term(half(1, 1), lin(1, -2)),
                term(n, lin(1, -2)),
                term(lin(2, 0), c(1)),
            ],
            trees: tf(1, &[(n, lin(1, -2)), (half(1, 1), lin(1, -2))]),
        },
        (GraphKind::Csep, Family::Quaternion, Odd) => ClosedForm {
            theorem: vec![
                term(c(0), c(1)),
                term(c(2), c(1)),
                term(lin(2, 2), lin(2, -1)),
                term(lin(4, 0), c(2)),
                term(lin(2, 0), lin(2, -3)),
            ],
            corollary: vec![
                term(c(0), c(1)),
                term(c(2), c(1)),
                term(lin(2, 0), lin(2, -3)),
                term(lin(2, 2), lin(2, -1)),
                term(lin(4, 0), c(2)),
            ],
            trees: tf(
                1,
                &[(c(2), lin(2, 0)), (n, lin(2, -2)), (lin(2, 2), lin(2, -1))],
            ),
        },
        (GraphKind::Csep, Family::Quaternion, Even) => ClosedForm {
            theorem: vec![
                term(c(0), c(1)),
                term(c(2), c(2)),
                term(lin(1, 2), lin(2, -2)),
                term(lin(4, 0), c(2)),
                term(lin(2, 0), lin(2, -3)),
            ],
            corollary: vec![
                term(c(0), c(1)),
                term(c(2), c(2)),
                term(lin(1, 2), lin(2, -2)),
                term(lin(2, 0), lin(2, -3)),
                term(lin(4, 0), c(2)),
            ],
            trees: tf(
                1,
                &[(c(2), lin(2, 1)), (n, lin(2, -2)), (lin(1, 2), lin(2, -2))],
            ),
        },
        (GraphKind::Csep, Family::Semidihedral, Even) => ClosedForm {
            theorem: vec![
                term(c(0), c(1)),
                term(c(1), c(1)),
                term(c(2), c(1)),
                term(lin(2, 1), lin(2, -1)),
                term(lin(2, 2), lin(2, -2)),
                term(lin(4, 0), lin(4, -3)),
                term(lin(6, 0), c(1)),
                term(lin(8, 0), c(1)),
            ],
            corollary: vec![
                term(c(0), c(1)),
                term(c(1), c(1)),
                term(c(2), c(1)),
                term(lin(2, 1), lin(2, -1)),
                term(lin(2, 2), lin(2, -1)),
                term(lin(4, 0), lin(4, -3)),
                term(lin(6, 0), c(1)),
                term(lin(8, 0), c(1)),
            ],
            trees: tf(
                3,
                &[
                    (c(2), lin(8, -4)),
                    (n, lin(4, -2)),
                    (lin(2, 2), lin(2, -1)),
                    (lin(2, 1), lin(2, -1)),
                ],
            ),
        },
        (GraphKind::Csep, Family::Semidihedral, Odd) => ClosedForm {
            theorem: vec![
                term(c(0), c(1)),
                term(lin(8, 0), c(1)),
                term(lin(6, 0), c(1)),
                term(c(2), c(1)),
                term(lin(4, 0), lin(4, -3)),
                term(c(1), c(2)),
                term(lin(1, 1), lin(2, -2)),
                term(lin(2, 2), lin(2, -1)),
            ],
            corollary: vec![
                term(c(0), c(1)),
                term(c(1), c(2)),
                term(c(2), c(1)),
                term(lin(1, 1), lin(2, -2)),
                term(lin(2, 2), lin(2, -1)),
                term(lin(4, 0), lin(4, -3)),
                term(lin(6, 0), c(1)),
                term(lin(8, 0), c(1)),
            ],
            trees: tf(
                3,
                &[
                    (c(2), lin(8, -4)),
                    (n, lin(4, -2)),
                    (lin(2, 2), lin(2, -1)),
                    (lin(1, 1), lin(2, -2)),
                ],
            ),
        },
        (GraphKind::Cscom, Family::Semidihedral, Odd) => {
            let terms = vec![
                term(c(0), c(1)),
                term(c(4), c(1)),
                term(lin(4, 0), lin(4, -5)),
                term(lin(4, 4), lin(4, -1)),
                term(lin(8, 0), c(4)),
            ];
            ClosedForm {
                theorem: terms.clone(),
                corollary: terms,
                trees: tf(
                    1,
                    &[(c(2), lin(8, 1)), (n, lin(4, -2)), (lin(4, 4), lin(4, -1))],
                ),
            }
        }
        (GraphKind::Cscom, Family::Semidihedral, Even) => {
            let terms = vec![
                term(c(0), c(1)),
                term(c(2), c(2)),
                term(lin(2, 2), lin(4, -2)),
                term(lin(4, 0), lin(4, -3)),
                term(lin(8, 0), c(2)),
            ];
            ClosedForm {
                theorem: terms.clone(),
                corollary: terms,
                trees: tf(
                    1,
                    &[(c(2), lin(8, -1)), (n, lin(4, -2)), (lin(2, 2), lin(4, -2))],
                ),
            }
        }
        _ => return None,
    };
    Some(form)
}

fn lookup(kind: GraphKind, family: Family, n: usize) -> Result<ClosedForm> {
    kind.check_supported(family, n)?;
    closed_form(kind, family, Parity::of(n)).ok_or_else(|| Error::UnsupportedCombination {
        kind: kind.to_string(),
        family,
    })
}

/// One instantiated term of a prediction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedTerm {
    pub value_expr: String,
    pub multiplicity_expr: String,
    pub value: i64,
    pub multiplicity: i64,
}

/// A closed-form spectrum instantiated at a concrete `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub kind: GraphKind,
    pub family: Family,
    pub n: usize,
    pub parity: Parity,
    pub source: Source,
    pub terms: Vec<PredictedTerm>,
    /// Σ m, symbolic and instantiated.
    pub degree_expr: String,
    pub degree: i64,
    /// Σ λ·m.
    pub weighted_sum: i128,
    /// Merged multiset; absent if some instantiated multiplicity is negative.
    pub spectrum: Option<SpectrumMultiset>,
    #[serde(with = "decimal")]
    pub tree_count: BigUint,
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

fn instantiate(
    kind: GraphKind,
    family: Family,
    n: usize,
    form: &ClosedForm,
    source: Source,
) -> Prediction {
    let terms: Vec<PredictedTerm> = form
        .terms(source)
        .iter()
        .map(|t| PredictedTerm {
            value_expr: t.value.to_string(),
            multiplicity_expr: t.multiplicity.to_string(),
            value: t.value.eval(n).expect("eigenvalue defined for this parity"),
            multiplicity: t
                .multiplicity
                .eval(n)
                .expect("multiplicity defined for this parity"),
        })
        .collect();
    let degree = terms.iter().map(|t| t.multiplicity).sum();
    let weighted_sum = terms
        .iter()
        .map(|t| t.value as i128 * t.multiplicity as i128)
        .sum();
    let valid = terms.iter().all(|t| t.multiplicity >= 0 && t.value >= 0);
    let spectrum = valid.then(|| {
        SpectrumMultiset::new(
            terms
                .iter()
                .map(|t| (t.value as u64, t.multiplicity as usize)),
        )
    });
    Prediction {
        kind,
        family,
        n,
        parity: Parity::of(n),
        source,
        terms,
        degree_expr: form.degree(source).to_string(),
        degree,
        weighted_sum,
        spectrum,
        tree_count: form
            .trees
            .eval(n)
            .expect("tree formula defined for this parity"),
    }
}

/// Both variants (theorem polynomial first, then corollary spectrum).
pub fn predicted_spectrum(kind: GraphKind, family: Family, n: usize) -> Result<Vec<Prediction>> {
    let form = lookup(kind, family, n)?;
    Ok([Source::TheoremPolynomial, Source::CorollarySpectrum]
        .into_iter()
        .map(|source| instantiate(kind, family, n, &form, source))
        .collect())
}

/// The corollary-spectrum variant alone.
pub fn predicted_corollary_spectrum(
    kind: GraphKind,
    family: Family,
    n: usize,
) -> Result<SpectrumMultiset> {
    let form = lookup(kind, family, n)?;
    let p = instantiate(kind, family, n, &form, Source::CorollarySpectrum);
    Ok(p.spectrum
        .expect("corollary multiplicities are nonnegative in range"))
}

pub fn predicted_tree_count(kind: GraphKind, family: Family, n: usize) -> Result<BigUint> {
    let form = lookup(kind, family, n)?;
    Ok(form
        .trees
        .eval(n)
        .expect("tree formula defined for this parity"))
}

/// Comparison of one prediction variant with the computed spectrum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantCheck {
    pub prediction: Prediction,
    /// Σ m equals the vertex count.
    pub degree_ok: bool,
    /// Σ λ·m equals twice the edge count.
    pub trace_ok: bool,
    pub matches: bool,
}

impl VariantCheck {
    pub fn sane(&self) -> bool {
        self.degree_ok && self.trace_ok && self.prediction.spectrum.is_some()
    }
}

/// Verification record for one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub kind: GraphKind,
    pub family: Family,
    pub n: usize,
    pub order: usize,
    pub edges: usize,
    /// Structural composition equals the group-definition build.
    pub structural_match: bool,
    /// Computed spectrum; absent if the graph is not Laplacian-integral.
    pub spectrum: Option<SpectrumMultiset>,
    /// Nullity of `L - λI` equals the deflation multiplicity for every λ.
    pub nullity_agrees: bool,
    pub variants: Vec<VariantCheck>,
    #[serde(with = "decimal")]
    pub computed_trees: BigUint,
    #[serde(with = "decimal")]
    pub predicted_trees: BigUint,
    /// Eigenvalue-product and reduced-determinant counts agree.
    pub tree_methods_agree: bool,
    pub tree_match: bool,
    /// Tree formula equals the corollary eigenvalue product over `N`.
    pub corollary_tree_consistent: bool,
    pub notes: Vec<String>,
}

impl CaseRecord {
    fn variant(&self, source: Source) -> Option<&VariantCheck> {
        self.variants.iter().find(|v| v.prediction.source == source)
    }

    /// The case holds if some variant matches exactly and every exact
    /// cross-check passes.
    pub fn ok(&self) -> bool {
        self.structural_match
            && self.spectrum.is_some()
            && self.nullity_agrees
            && self.tree_methods_agree
            && self.tree_match
            && self.variants.iter().any(|v| v.matches)
    }

    pub fn theorem_matches(&self) -> bool {
        self.variant(Source::TheoremPolynomial)
            .is_some_and(|v| v.matches)
    }

    /// Variant whose prediction the computation supports, if any.
    pub fn adjudicated(&self) -> Option<Source> {
        [Source::CorollarySpectrum, Source::TheoremPolynomial]
            .into_iter()
            .find(|&s| self.variant(s).is_some_and(|v| v.matches))
    }
}

/// A theorem-polynomial prediction the computation contradicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremMismatch {
    pub kind: GraphKind,
    pub family: Family,
    pub n: usize,
    pub degree_expr: String,
    pub degree: i64,
    pub order: usize,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: GraphKind,
    pub family: Family,
    pub n_start: usize,
    pub n_end: usize,
    pub cases: Vec<CaseRecord>,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.cases.iter().all(CaseRecord::ok)
    }

    pub fn theorem_mismatches(&self) -> Vec<TheoremMismatch> {
        self.cases
            .iter()
            .filter_map(|c| {
                let v = c.variant(Source::TheoremPolynomial)?;
                if v.matches {
                    return None;
                }
                let p = &v.prediction;
                let mut description = format!(
                    "{} on {} at n = {}: theorem polynomial has degree {} = {} but the graph has {} vertices",
                    c.kind,
                    c.family.display_name(c.n),
                    c.n,
                    p.degree_expr,
                    p.degree,
                    c.order
                );
                if v.degree_ok {
                    description = format!(
                        "{} on {} at n = {}: theorem polynomial spectrum differs from computation",
                        c.kind,
                        c.family.display_name(c.n),
                        c.n
                    );
                }
                Some(TheoremMismatch {
                    kind: c.kind,
                    family: c.family,
                    n: c.n,
                    degree_expr: p.degree_expr.clone(),
                    degree: p.degree,
                    order: c.order,
                    description,
                })
            })
            .collect()
    }

    /// Fixed-width text table, one row per case.
    pub fn to_table(&self) -> String {
        let mut out = format!(
            "{:>4} {:>6} {:>7}  {:<10} {:<8} {:<8} {:<6} {}\n",
            "n", "order", "edges", "structure", "theorem", "corollary", "trees", "spectrum"
        );
        let flag = |b: bool| if b { "ok" } else { "FAIL" };
        for c in &self.cases {
            let matches = |s| c.variant(s).is_some_and(|v| v.matches);
            out.push_str(&format!(
                "{:>4} {:>6} {:>7}  {:<10} {:<8} {:<8} {:<6} {}\n",
                c.n,
                c.order,
                c.edges,
                flag(c.structural_match),
                if matches(Source::TheoremPolynomial) {
                    "match"
                } else {
                    "differs"
                },
                if matches(Source::CorollarySpectrum) {
                    "match"
                } else {
                    "differs"
                },
                flag(c.tree_match && c.tree_methods_agree),
                c.spectrum
                    .as_ref()
                    .map_or_else(|| "not integral".to_string(), SpectrumMultiset::compact),
            ));
            for note in &c.notes {
                out.push_str(&format!("       note: {note}\n"));
            }
        }
        out
    }
}

/// Verify one parameter value.
pub fn verify_case(kind: GraphKind, family: Family, n: usize) -> Result<CaseRecord> {
    let form = lookup(kind, family, n)?;
    let group = build_group(family, n)?;
    let graph = named_super_graph(&group, kind.base(), kind.relation());
    let structural_match = structural_graph(kind, family, n)? == graph;
    let (order, edges) = (graph.vertex_count(), graph.edge_count());
    let mut notes = Vec::new();

    let summary = match analyze(&graph) {
        Ok(s) => Some(s),
        Err(Error::NotIntegral { residual }) => {
            notes.push(format!(
                "not Laplacian-integral; residual factor {residual}"
            ));
            None
        }
        Err(e) => return Err(e),
    };
    let spectrum = summary.as_ref().map(|s| s.spectrum.clone());
    let nullity_agrees = match &spectrum {
        Some(s) => nullities_at(&laplacian(&graph), s) == s.pairs(),
        None => false,
    };
    if spectrum.is_some() && !nullity_agrees {
        notes.push("nullity of L - tI disagrees with deflation multiplicity".to_string());
    }

    let variants: Vec<VariantCheck> = [Source::TheoremPolynomial, Source::CorollarySpectrum]
        .into_iter()
        .map(|source| {
            let prediction = instantiate(kind, family, n, &form, source);
            let degree_ok = prediction.degree == order as i64;
            let trace_ok = prediction.weighted_sum == 2 * edges as i128;
            let matches = prediction.spectrum.is_some() && prediction.spectrum == spectrum;
            VariantCheck {
                prediction,
                degree_ok,
                trace_ok,
                matches,
            }
        })
        .collect();
    for v in &variants {
        let p = &v.prediction;
        if !v.degree_ok {
            notes.push(format!(
                "{}: degree {} = {} differs from order {order}",
                p.source, p.degree_expr, p.degree
            ));
        }
        if !v.trace_ok {
            notes.push(format!(
                "{}: eigenvalue sum {} differs from trace {}",
                p.source,
                p.weighted_sum,
                2 * edges
            ));
        }
        if p.spectrum.is_none() {
            notes.push(format!("{}: negative multiplicity at this n", p.source));
        }
        if v.sane() && !v.matches {
            notes.push(format!(
                "{}: passes degree and trace checks but differs from computation",
                p.source
            ));
        }
    }
    if let Some(p) = variants
        .iter()
        .find(|v| v.prediction.source == Source::CorollarySpectrum)
    {
        let distinct: std::collections::BTreeSet<i64> =
            p.prediction.terms.iter().map(|t| t.value).collect();
        if distinct.len() < p.prediction.terms.len() {
            notes.push("coincident eigenvalues merged at this n".to_string());
        }
    }
    if kind == GraphKind::Csep && family == Family::Semidihedral {
        let v = 4 * n as u64;
        let computed = spectrum.as_ref().map_or(0, |s| s.multiplicity(v));
        notes.push(format!(
            "eigenvalue 4n = {v}: theorem and corollary both give multiplicity 4n-3 = {}, computed {computed}",
            4 * n - 3
        ));
    }

    let (computed_trees, tree_methods_agree) = match &summary {
        Some(s) => (s.trees.by_cofactor.clone(), s.trees.agree()),
        None => (crate::spectral::spanning_tree_count(&graph), true),
    };
    let predicted_trees = form.trees.eval(n).expect("tree formula defined");
    let tree_match = computed_trees == predicted_trees;
    let corollary_tree_consistent = variants
        .iter()
        .find(|v| v.prediction.source == Source::CorollarySpectrum)
        .and_then(|v| v.prediction.spectrum.as_ref())
        .is_some_and(|s| s.tree_count() == predicted_trees);

    Ok(CaseRecord {
        kind,
        family,
        n,
        order,
        edges,
        structural_match,
        spectrum,
        nullity_agrees,
        variants,
        computed_trees,
        predicted_trees,
        tree_methods_agree,
        tree_match,
        corollary_tree_consistent,
        notes,
    })
}

/// Verify every `n` in `range` (inclusive), in parallel, collected in order.
pub fn verify(
    kind: GraphKind,
    family: Family,
    range: std::ops::RangeInclusive<usize>,
) -> Result<VerificationReport> {
    let (n_start, n_end) = (*range.start(), *range.end());
    let cases = range
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| verify_case(kind, family, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        kind,
        family,
        n_start,
        n_end,
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spectrum(pairs: &[(u64, usize)]) -> SpectrumMultiset {
        SpectrumMultiset::new(pairs.iter().copied())
    }

    #[test]
    fn linear_expr_display_and_eval() {
        assert_eq!(lin(2, 2).to_string(), "2n+2");
        assert_eq!(half(1, 1).to_string(), "n/2+1");
        assert_eq!(lin(4, -3).to_string(), "4n-3");
        assert_eq!(LinearExpr::constant(3).to_string(), "3");
        assert_eq!(half(1, 1).eval(6), Some(4));
        assert_eq!(half(1, 1).eval(5), None);
        assert_eq!((half(1, 0) + half(1, 0)).to_string(), "n");
    }

    #[test]
    fn examples_from_eigenvalue_tables() {
        let d = predicted_corollary_spectrum(GraphKind::Csep, Family::Dihedral, 5).unwrap();
        assert_eq!(d, spectrum(&[(0, 1), (1, 1), (5, 3), (6, 4), (10, 1)]));
        let s = predicted_corollary_spectrum(GraphKind::Cscom, Family::Semidihedral, 3).unwrap();
        assert_eq!(s, spectrum(&[(0, 1), (4, 1), (12, 7), (16, 11), (24, 4)]));
        let q = predicted_corollary_spectrum(GraphKind::Csep, Family::Quaternion, 2).unwrap();
        assert_eq!(q, spectrum(&[(0, 1), (2, 2), (4, 3), (8, 2)]));
    }

    #[test]
    fn tree_formula_examples() {
        assert_eq!(
            predicted_tree_count(GraphKind::Csep, Family::Dihedral, 3).unwrap(),
            BigUint::from(48u32)
        );
        assert_eq!(
            predicted_tree_count(GraphKind::Csep, Family::Quaternion, 2).unwrap(),
            BigUint::from(2048u32)
        );
        assert_eq!(
            predicted_tree_count(GraphKind::Cscom, Family::Semidihedral, 2).unwrap(),
            BigUint::from(97_844_723_712u64)
        );
    }

    #[test]
    fn symbolic_degrees_of_variants() {
        let d = closed_form(GraphKind::Csep, Family::Dihedral, Parity::Even).unwrap();
        assert_eq!(d.degree(Source::TheoremPolynomial).to_string(), "2n+1");
        assert_eq!(d.degree(Source::CorollarySpectrum).to_string(), "2n");
        let s = closed_form(GraphKind::Csep, Family::Semidihedral, Parity::Even).unwrap();
        assert_eq!(s.degree(Source::TheoremPolynomial).to_string(), "8n-1");
        assert_eq!(s.degree(Source::CorollarySpectrum).to_string(), "8n");
    }

    #[test]
    fn unsupported_combinations() {
        assert!(matches!(
            predicted_spectrum(GraphKind::Cscom, Family::Dihedral, 4),
            Err(Error::UnsupportedCombination { .. })
        ));
        assert!(matches!(
            predicted_tree_count(GraphKind::Csep, Family::Cyclic, 4),
            Err(Error::UnsupportedCombination { .. })
        ));
    }

    #[test]
    fn verify_flags_dihedral_even_theorem() {
        let case = verify_case(GraphKind::Csep, Family::Dihedral, 4).unwrap();
        assert!(case.ok());
        assert_eq!(
            case.spectrum,
            Some(spectrum(&[(8, 1), (4, 2), (3, 2), (1, 2), (0, 1)]))
        );
        assert!(!case.theorem_matches());
        assert_eq!(case.adjudicated(), Some(Source::CorollarySpectrum));
        assert_eq!(case.edges * 2, 24);
    }

    #[test]
    fn verify_flags_semidihedral_even_theorem() {
        let report = verify(GraphKind::Csep, Family::Semidihedral, 2..=2).unwrap();
        let case = &report.cases[0];
        assert!(report.all_ok());
        assert_eq!(
            case.spectrum,
            Some(spectrum(&[
                (16, 1),
                (12, 1),
                (8, 5),
                (6, 3),
                (5, 3),
                (2, 1),
                (1, 1),
                (0, 1)
            ]))
        );
        let mismatches = report.theorem_mismatches();
        assert_eq!(mismatches.len(), 1);
        assert_eq!(mismatches[0].degree_expr, "8n-1");
        assert_eq!(mismatches[0].degree, 15);
    }

    #[test]
    fn verify_odd_dihedral_has_no_theorem_mismatch() {
        let report = verify(GraphKind::Csep, Family::Dihedral, 3..=7).unwrap();
        let odd: Vec<_> = report.cases.iter().filter(|c| c.n % 2 == 1).collect();
        assert!(odd
            .iter()
            .all(|c| c.ok() && c.theorem_matches() && c.corollary_tree_consistent));
    }
}
