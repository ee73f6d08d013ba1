//! Exact Laplacian analytics: assembly, characteristic polynomial, integral
//! spectrum extraction and spanning-tree counting.
//!
//! Nothing in this module uses floating point. The characteristic polynomial
//! comes from the multi-modular Hessenberg path; spectra are read off it by
//! deflating integer roots from `N` down to `0`, and multiplicities can be
//! cross-checked against exact nullities of `L - tI`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::linalg::{bareiss, hessenberg, modular, IntegerPolynomial, Matrix};
use crate::IntegerMatrix;

/// `D(Γ) - A(Γ)` in the graph's vertex order.
pub fn laplacian(g: &SimpleGraph) -> IntegerMatrix {
    let n = g.vertex_count();
    let degrees = g.degrees();
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            BigInt::from(degrees[i])
        } else if g.has_edge(i, j) {
            -BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

/// Check that `m` is the Laplacian of some simple graph.
pub fn validate_laplacian(m: &IntegerMatrix) -> Result<()> {
    let n = m.ensure_square()?;
    let minus_one = -BigInt::one();
    for i in 0..n {
        let mut row_sum = BigInt::zero();
        for j in 0..n {
            let x = &m[(i, j)];
            row_sum += x;
            if i == j {
                continue;
            }
            if !x.is_zero() && *x != minus_one {
                return Err(Error::NotLaplacian(format!("entry ({i}, {j}) = {x}")));
            }
            if *x != m[(j, i)] {
                return Err(Error::NotLaplacian(format!("asymmetric at ({i}, {j})")));
            }
        }
        if !row_sum.is_zero() {
            return Err(Error::NotLaplacian(format!("row {i} sums to {row_sum}")));
        }
    }
    Ok(())
}

/// Recover the graph encoded by a Laplacian.
pub fn graph_of_laplacian(m: &IntegerMatrix) -> Result<SimpleGraph> {
    validate_laplacian(m)?;
    let n = m.rows();
    Ok(SimpleGraph::from_fn(n, |i, j| !m[(i, j)].is_zero()))
}

/// Exact `det(xI - m)` via the multi-modular route.
pub fn char_poly(m: &IntegerMatrix) -> Result<IntegerPolynomial> {
    Ok(IntegerPolynomial::new(modular::char_poly_multimodular(m)?))
}

/// Exact `det(xI - m)` via Hessenberg reduction over the rationals. Slower;
/// kept as an independent path for cross-checking.
pub fn char_poly_rational(m: &IntegerMatrix) -> Result<IntegerPolynomial> {
    let q = m.map(|x| BigRational::from_integer(x.clone()));
    let coeffs = hessenberg::char_poly(&q)?;
    Ok(IntegerPolynomial::new(
        coeffs.into_iter().map(|c| c.to_integer()).collect(),
    ))
}

/// `N - rank(m)` by fraction-free elimination.
pub fn nullity(m: &IntegerMatrix) -> usize {
    bareiss::nullity(m)
}

/// Multiset of nonnegative integer eigenvalues, sorted by decreasing value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<(u64, usize)>", into = "Vec<(u64, usize)>")]
pub struct SpectrumMultiset {
    pairs: Vec<(u64, usize)>,
}

impl SpectrumMultiset {
    /// Normalize arbitrary `(eigenvalue, multiplicity)` pairs: equal values
    /// merge, zero multiplicities vanish, order becomes descending.
    pub fn new(pairs: impl IntoIterator<Item = (u64, usize)>) -> Self {
        let mut pairs: Vec<(u64, usize)> = pairs.into_iter().filter(|&(_, m)| m > 0).collect();
        pairs.sort_unstable_by_key(|&(v, _)| std::cmp::Reverse(v));
        let mut merged: Vec<(u64, usize)> = Vec::with_capacity(pairs.len());
        for (v, m) in pairs {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += m,
                _ => merged.push((v, m)),
            }
        }
        SpectrumMultiset { pairs: merged }
    }

    pub fn pairs(&self) -> &[(u64, usize)] {
        &self.pairs
    }

    pub fn multiplicity(&self, eigenvalue: u64) -> usize {
        self.pairs
            .iter()
            .find(|p| p.0 == eigenvalue)
            .map_or(0, |p| p.1)
    }

    pub fn distinct_count(&self) -> usize {
        self.pairs.len()
    }

    /// Σ m: the matrix dimension.
    pub fn total_multiplicity(&self) -> usize {
        self.pairs.iter().map(|p| p.1).sum()
    }

    /// Σ λ·m: the trace of the Laplacian, i.e. twice the edge count.
    pub fn weighted_sum(&self) -> u128 {
        self.pairs.iter().map(|&(v, m)| v as u128 * m as u128).sum()
    }

    pub fn max_eigenvalue(&self) -> Option<u64> {
        self.pairs.first().map(|p| p.0)
    }

    /// `Π (x - λ)^m`.
    pub fn to_polynomial(&self) -> IntegerPolynomial {
        IntegerPolynomial::from_roots(&self.pairs)
    }

    /// Matrix-Tree count `(Π nonzero λ^m) / N`; zero unless `0` is simple.
    pub fn tree_count(&self) -> BigUint {
        let n = self.total_multiplicity();
        if n == 0 || self.multiplicity(0) != 1 {
            return BigUint::zero();
        }
        let product: BigUint = self
            .pairs
            .iter()
            .filter(|p| p.0 != 0)
            .map(|&(v, m)| BigUint::from(v).pow(m as u32))
            .product();
        product / n
    }

    /// Factored characteristic polynomial, e.g. `x(x-1)(x-3)(x-4)^2(x-6)`.
    pub fn factored(&self) -> String {
        let mut out = String::new();
        for &(v, m) in self.pairs.iter().rev() {
            let base = if v == 0 {
                "x".to_string()
            } else {
                format!("(x-{v})")
            };
            out.push_str(&base);
            if m > 1 {
                out.push_str(&format!("^{m}"));
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    /// Space-separated `λ^m` tokens in descending order.
    pub fn compact(&self) -> String {
        self.pairs
            .iter()
            .map(|(v, m)| format!("{v}^{m}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl From<Vec<(u64, usize)>> for SpectrumMultiset {
    fn from(pairs: Vec<(u64, usize)>) -> Self {
        SpectrumMultiset::new(pairs)
    }
}

impl From<SpectrumMultiset> for Vec<(u64, usize)> {
    fn from(s: SpectrumMultiset) -> Self {
        s.pairs
    }
}

impl fmt::Display for SpectrumMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (v, m)) in self.pairs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}:{m}")?;
        }
        write!(f, "}}")
    }
}

/// Integer roots of a Laplacian characteristic polynomial of degree `n`,
/// deflated in the order `n, n-1, ..., 0`.
pub fn spectrum_of_char_poly(p: &IntegerPolynomial) -> Result<SpectrumMultiset> {
    let n = p.degree().unwrap_or(0) as u64;
    let (roots, residual) = p.split_integer_roots((0..=n).rev());
    if !residual.is_constant() {
        return Err(Error::NotIntegral { residual });
    }
    Ok(SpectrumMultiset::new(roots))
}

/// Full spectrum of a Laplacian, or `NotIntegral` with the irreducible
/// leftover when some eigenvalue is not an integer.
pub fn integral_spectrum(l: &IntegerMatrix) -> Result<SpectrumMultiset> {
    validate_laplacian(l)?;
    spectrum_of_char_poly(&char_poly(l)?)
}

/// Same multiset as [`integral_spectrum`], but each multiplicity is the exact
/// nullity of `L - tI` for a candidate `t ∈ [0, N]`.
pub fn integral_spectrum_by_nullity(l: &IntegerMatrix) -> Result<SpectrumMultiset> {
    validate_laplacian(l)?;
    let n = l.rows();
    let pairs: Vec<(u64, usize)> = (0..=n as u64)
        .into_par_iter()
        .map(|t| (t, nullity(&l.shifted(&BigInt::from(t)))))
        .collect();
    let spectrum = SpectrumMultiset::new(pairs);
    if spectrum.total_multiplicity() != n {
        let (_, residual) = char_poly(l)?.split_integer_roots((0..=n as u64).rev());
        return Err(Error::NotIntegral { residual });
    }
    Ok(spectrum)
}

/// Nullity of `L - λI` for each eigenvalue of `spectrum`, in the same order.
pub fn nullities_at(l: &IntegerMatrix, spectrum: &SpectrumMultiset) -> Vec<(u64, usize)> {
    spectrum
        .pairs()
        .par_iter()
        .map(|&(v, _)| (v, nullity(&l.shifted(&BigInt::from(v)))))
        .collect()
}

/// Spanning-tree counts obtained along two independent routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCounts {
    /// `(Π nonzero λ) / N`, read from the characteristic polynomial.
    pub by_eigenvalues: BigUint,
    /// Determinant of the Laplacian with the first row and column removed.
    pub by_cofactor: BigUint,
}

impl TreeCounts {
    pub fn agree(&self) -> bool {
        self.by_eigenvalues == self.by_cofactor
    }
}

/// `(Π nonzero λ) / N` from the characteristic polynomial: the product of
/// the nonzero roots is `|c_1|` when `0` is a simple root, and `c_1 = 0`
/// exactly when the graph is disconnected.
pub fn tree_count_from_char_poly(p: &IntegerPolynomial) -> BigUint {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return BigUint::zero();
    }
    if n == 1 {
        return BigUint::one();
    }
    p.coefficient(1).abs().to_biguint().expect("nonnegative") / n
}

/// Reduced-Laplacian determinant.
pub fn tree_count_by_cofactor(l: &IntegerMatrix) -> Result<BigUint> {
    let n = l.ensure_square()?;
    if n == 0 {
        return Ok(BigUint::zero());
    }
    let det = modular::determinant_multimodular(&l.minor(0, 0))?;
    Ok(det
        .to_biguint()
        .expect("reduced Laplacian determinant is nonnegative"))
}

pub fn spanning_tree_counts(g: &SimpleGraph) -> Result<TreeCounts> {
    let l = laplacian(g);
    Ok(TreeCounts {
        by_eigenvalues: tree_count_from_char_poly(&char_poly(&l)?),
        by_cofactor: tree_count_by_cofactor(&l)?,
    })
}

/// Number of spanning trees; zero for disconnected graphs. Panics if the two
/// exact routes disagree, which would indicate an arithmetic bug.
pub fn spanning_tree_count(g: &SimpleGraph) -> BigUint {
    let counts = spanning_tree_counts(g).expect("Laplacian is square");
    assert!(counts.agree(), "tree-count routes disagree: {counts:?}");
    counts.by_cofactor
}

/// Everything the reports need about one graph, computed once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralSummary {
    pub order: usize,
    pub edges: usize,
    pub char_poly: IntegerPolynomial,
    pub spectrum: SpectrumMultiset,
    pub trees: TreeCounts,
}

/// Characteristic polynomial, integral spectrum and both tree counts.
pub fn analyze(g: &SimpleGraph) -> Result<SpectralSummary> {
    let l = laplacian(g);
    let p = char_poly(&l)?;
    let spectrum = spectrum_of_char_poly(&p)?;
    let trees = TreeCounts {
        by_eigenvalues: spectrum.tree_count(),
        by_cofactor: tree_count_by_cofactor(&l)?,
    };
    Ok(SpectralSummary {
        order: g.vertex_count(),
        edges: g.edge_count(),
        char_poly: p,
        spectrum,
        trees,
    })
}
