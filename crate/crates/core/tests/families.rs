//! Exact values for small family graphs, cross-checked against an independent
//! computer-algebra computation of the same graphs.

use num_bigint::{BigInt, BigUint};
use supergraph::closed_form::predicted_corollary_spectrum;
use supergraph::{
    analyze, build_group, char_poly, laplacian, named_super_graph, nullity, spanning_tree_count,
    structural_graph, BaseGraph, Family, GraphKind, Relation, SimpleGraph, SpectrumMultiset,
};

fn graph(kind: GraphKind, family: Family, n: usize) -> SimpleGraph {
    let g = build_group(family, n).unwrap();
    named_super_graph(&g, kind.base(), kind.relation())
}

fn spectrum(pairs: &[(u64, usize)]) -> SpectrumMultiset {
    SpectrumMultiset::new(pairs.iter().copied())
}

/// Graph kind, family, parameter, spectrum and spanning-tree count.
type Reference = (
    GraphKind,
    Family,
    usize,
    &'static [(u64, usize)],
    &'static str,
);

const REFERENCE: &[Reference] = &[
    (
        GraphKind::Csep,
        Family::Dihedral,
        3,
        &[(6, 1), (4, 2), (3, 1), (1, 1), (0, 1)],
        "48",
    ),
    (
        GraphKind::Csep,
        Family::Dihedral,
        4,
        &[(8, 1), (4, 2), (3, 2), (1, 2), (0, 1)],
        "144",
    ),
    (
        GraphKind::Csep,
        Family::Dihedral,
        5,
        &[(10, 1), (6, 4), (5, 3), (1, 1), (0, 1)],
        "162000",
    ),
    (
        GraphKind::Csep,
        Family::Dihedral,
        6,
        &[(12, 1), (6, 4), (4, 4), (1, 2), (0, 1)],
        "331776",
    ),
    (
        GraphKind::Csep,
        Family::Quaternion,
        2,
        &[(8, 2), (4, 3), (2, 2), (0, 1)],
        "2048",
    ),
    (
        GraphKind::Csep,
        Family::Quaternion,
        3,
        &[(12, 2), (8, 5), (6, 3), (2, 1), (0, 1)],
        "169869312",
    ),
    (
        GraphKind::Csep,
        Family::Quaternion,
        4,
        &[(16, 2), (8, 5), (6, 6), (2, 2), (0, 1)],
        "97844723712",
    ),
    (
        GraphKind::Csep,
        Family::Semidihedral,
        2,
        &[
            (16, 1),
            (12, 1),
            (8, 5),
            (6, 3),
            (5, 3),
            (2, 1),
            (1, 1),
            (0, 1),
        ],
        "21233664000",
    ),
    (
        GraphKind::Csep,
        Family::Semidihedral,
        3,
        &[
            (24, 1),
            (18, 1),
            (12, 9),
            (8, 5),
            (4, 4),
            (2, 1),
            (1, 2),
            (0, 1),
        ],
        "1558201490605080576",
    ),
    (
        GraphKind::Cscom,
        Family::Semidihedral,
        2,
        &[(16, 2), (8, 5), (6, 6), (2, 2), (0, 1)],
        "97844723712",
    ),
    (
        GraphKind::Cscom,
        Family::Semidihedral,
        3,
        &[(24, 4), (16, 11), (12, 7), (4, 1), (0, 1)],
        "34856377305871210027941888",
    ),
];

#[test]
fn spectra_and_tree_counts_match_reference() {
    for &(kind, family, n, pairs, trees) in REFERENCE {
        let g = graph(kind, family, n);
        let summary = analyze(&g).unwrap();
        let label = format!("{kind} {}", family.display_name(n));
        assert_eq!(summary.spectrum, spectrum(pairs), "{label}");
        assert_eq!(
            summary.trees.by_cofactor,
            trees.parse::<BigUint>().unwrap(),
            "{label}"
        );
        assert!(summary.trees.agree(), "{label}");
        assert_eq!(
            summary.spectrum,
            predicted_corollary_spectrum(kind, family, n).unwrap(),
            "{label}"
        );
        assert_eq!(structural_graph(kind, family, n).unwrap(), g, "{label}");
    }
}

#[test]
fn csep_d6_char_poly_factors() {
    let g = graph(GraphKind::Csep, Family::Dihedral, 3);
    let s = analyze(&g).unwrap();
    assert_eq!(s.spectrum.factored(), "x(x-1)(x-3)(x-4)^2(x-6)");
    let l = laplacian(&g);
    assert_eq!(l[(0, 0)], BigInt::from(5));
    assert_eq!(nullity(&l.shifted(&BigInt::from(4))), 2);
    assert_eq!(char_poly(&l).unwrap(), s.spectrum.to_polynomial());
}

#[test]
fn csep_q8_edge_count() {
    assert_eq!(
        graph(GraphKind::Csep, Family::Quaternion, 2).edge_count(),
        16
    );
}

#[test]
fn cscom_sd16_tree_count() {
    let g = graph(GraphKind::Cscom, Family::Semidihedral, 2);
    assert_eq!(spanning_tree_count(&g), BigUint::from(97_844_723_712u64));
}

/// `diag - J` on `k` vertices: the Laplacian of `K_k` shifted by a constant.
fn assert_block(l: &supergraph::IntegerMatrix, vertices: &[usize], diag: i64) {
    for (a, &i) in vertices.iter().enumerate() {
        for (b, &j) in vertices.iter().enumerate() {
            let expected = if a == b { diag } else { -1 };
            assert_eq!(l[(i, j)], BigInt::from(expected), "entry ({i}, {j})");
        }
    }
}

fn assert_zero_block(l: &supergraph::IntegerMatrix, rows: &[usize], cols: &[usize]) {
    for &i in rows {
        for &j in cols {
            assert_eq!(l[(i, j)], BigInt::from(0), "entry ({i}, {j})");
        }
    }
}

#[test]
fn dihedral_odd_laplacian_has_block_form() {
    for n in [3usize, 5, 7, 9] {
        let l = laplacian(&graph(GraphKind::Csep, Family::Dihedral, n));
        let rotations: Vec<usize> = (1..n).collect();
        let reflections: Vec<usize> = (n..2 * n).collect();
        assert_eq!(l[(0, 0)], BigInt::from(2 * n as i64 - 1));
        assert!((1..2 * n).all(|j| l[(0, j)] == BigInt::from(-1)));
        // A = nI - J on the nontrivial rotations, B = (n+1)I - J on the reflections.
        assert_block(&l, &rotations, n as i64 - 1);
        assert_block(&l, &reflections, n as i64);
        assert_zero_block(&l, &rotations, &reflections);
    }
}

#[test]
fn dihedral_even_laplacian_has_block_form() {
    for n in [4usize, 6, 8] {
        let l = laplacian(&graph(GraphKind::Csep, Family::Dihedral, n));
        let rotations: Vec<usize> = (1..n).collect();
        let odd: Vec<usize> = (0..n).filter(|i| i % 2 == 1).map(|i| n + i).collect();
        let even: Vec<usize> = (0..n).filter(|i| i % 2 == 0).map(|i| n + i).collect();
        assert_block(&l, &rotations, n as i64 - 1);
        // Each reflection class is a clique of size n/2 joined only to e.
        assert_block(&l, &odd, n as i64 / 2);
        assert_block(&l, &even, n as i64 / 2);
        assert_zero_block(&l, &odd, &even);
        assert_zero_block(&l, &rotations, &odd);
    }
}

#[test]
fn quaternion_odd_laplacian_has_block_form() {
    for n in [3usize, 5] {
        let l = laplacian(&graph(GraphKind::Csep, Family::Quaternion, n));
        // e and a^n are universal.
        assert_eq!(l[(0, 0)], BigInt::from(4 * n as i64 - 1));
        assert_eq!(l[(n, n)], BigInt::from(4 * n as i64 - 1));
        let rotations: Vec<usize> = (1..2 * n).filter(|&i| i != n).collect();
        let reflections: Vec<usize> = (2 * n..4 * n).collect();
        assert_block(&l, &rotations, 2 * n as i64 - 1);
        assert_block(&l, &reflections, 2 * n as i64 + 1);
        assert_zero_block(&l, &rotations, &reflections);
    }
}

#[test]
fn power_graphs_of_cyclic_prime_powers_are_complete() {
    for n in [1usize, 2, 3, 4, 5, 7, 8, 9] {
        let g = build_group(Family::Cyclic, n).unwrap();
        let p = named_super_graph(&g, BaseGraph::Power, Relation::Equality);
        let s = analyze(&p).unwrap();
        let expected = if n == 1 {
            spectrum(&[(0, 1)])
        } else {
            spectrum(&[(n as u64, n - 1), (0, 1)])
        };
        assert_eq!(s.spectrum, expected, "Z_{n}");
    }
}
