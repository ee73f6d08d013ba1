//! Brute-force reference computations for graphs with at most a dozen vertices.

#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use supergraph::SimpleGraph;

/// Polynomial over `i128`, lowest degree first.
type Poly = Vec<i128>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_scaled(acc: &mut Poly, p: &Poly, sign: i128) {
    if acc.len() < p.len() {
        acc.resize(p.len(), 0);
    }
    for (a, x) in acc.iter_mut().zip(p) {
        *a += sign * x;
    }
}

/// `det(xI - L)` by Laplace expansion along rows, memoized over the set of
/// columns already used. Coefficients lowest degree first.
pub fn cofactor_char_poly(g: &SimpleGraph) -> Vec<BigInt> {
    let n = g.vertex_count();
    assert!(n <= 16, "cofactor oracle is exponential in N");
    let entry = |i: usize, j: usize| -> Poly {
        if i == j {
            vec![-(g.degree(i) as i128), 1]
        } else if g.has_edge(i, j) {
            vec![1]
        } else {
            vec![0]
        }
    };
    // memo[mask] = determinant of the minor on rows popcount(mask).. and the
    // columns outside mask.
    let full = (1usize << n) - 1;
    let mut memo: Vec<Option<Poly>> = vec![None; 1 << n];
    memo[full] = Some(vec![1]);
    for mask in (0..full).rev() {
        let row = mask.count_ones() as usize;
        let mut acc: Poly = vec![0];
        let mut sign = 1;
        for col in 0..n {
            if mask & (1 << col) != 0 {
                continue;
            }
            let e = entry(row, col);
            if e.iter().any(|&c| c != 0) {
                let sub = memo[mask | (1 << col)]
                    .as_ref()
                    .expect("superset computed first");
                poly_add_scaled(&mut acc, &poly_mul(&e, sub), sign);
            }
            sign = -sign;
        }
        memo[mask] = Some(acc);
    }
    let mut p = memo[0].take().unwrap();
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p.into_iter().map(BigInt::from).collect()
}

/// Number of spanning trees by exhaustive search over acyclic edge subsets
/// of size `N - 1`.
pub fn enumerate_spanning_trees(g: &SimpleGraph) -> BigUint {
    let n = g.vertex_count();
    if n <= 1 {
        return BigUint::from(n as u32);
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut comp: Vec<usize> = (0..n).collect();
    BigUint::from(search(&edges, 0, n - 1, &mut comp))
}

fn search(edges: &[(usize, usize)], start: usize, needed: usize, comp: &mut Vec<usize>) -> u64 {
    if needed == 0 {
        return 1;
    }
    let mut count = 0;
    for k in start..edges.len() {
        if edges.len() - k < needed {
            break;
        }
        let (u, v) = edges[k];
        let (cu, cv) = (comp[u], comp[v]);
        if cu == cv {
            continue;
        }
        let saved = comp.clone();
        for c in comp.iter_mut() {
            if *c == cv {
                *c = cu;
            }
        }
        count += search(edges, k + 1, needed - 1, comp);
        *comp = saved;
    }
    count
}

/// Graph on `n` vertices whose edges are read from `bits` in the order
/// (0,1), (0,2), ..., (1,2), ...
pub fn graph_from_bits(n: usize, bits: &[bool]) -> SimpleGraph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k % bits.len()] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    SimpleGraph::from_edges(n, edges)
}
