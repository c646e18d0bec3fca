//! Independent oracles shared by the integration tests. Nothing here calls the
//! search or eigensolver code under test.
#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use regemb::{Multigraph, SymMatrix};

/// Every permutation of `0..n`, lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm), without
/// materializing the list.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&a);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            f(&a);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

pub fn preserves_multiplicities(g: &Multigraph, p: &[usize]) -> bool {
    let n = g.n();
    (0..n).all(|i| (i + 1..n).all(|j| g.mu(i, j) == g.mu(p[i], p[j])))
}

/// Automorphisms by filtering all `n!` permutations, sorted.
pub fn naive_automorphisms(g: &Multigraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_permutation(g.n(), |p| {
        if preserves_multiplicities(g, p) {
            out.push(p.to_vec());
        }
    });
    out.sort();
    out
}

pub fn naive_automorphism_count(g: &Multigraph) -> usize {
    let mut count = 0;
    for_each_permutation(g.n(), |p| {
        if preserves_multiplicities(g, p) {
            count += 1;
        }
    });
    count
}

pub fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Distance-preserving permutations by filtering all `n!` permutations, using
/// the same relative tolerance convention as the library.
pub fn naive_isometries(points: &[Vec<f64>], rel_tol: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut scale: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            scale = scale.max(sq_dist(&points[i], &points[j]));
        }
    }
    let tol = rel_tol * scale.max(f64::MIN_POSITIVE);
    let mut out = Vec::new();
    for_each_permutation(n, |p| {
        let ok = (0..n).all(|i| {
            (i + 1..n).all(|j| (sq_dist(&points[i], &points[j]) - sq_dist(&points[p[i]], &points[p[j]])).abs() <= tol)
        });
        if ok {
            out.push(p.to_vec());
        }
    });
    out.sort();
    out
}

/// Naive twin test straight from the definition.
pub fn naive_twins(g: &Multigraph, x: usize, y: usize) -> bool {
    (0..g.n()).filter(|&z| z != x && z != y).all(|z| g.mu(x, z) == g.mu(y, z))
}

pub fn naive_irreducible(g: &Multigraph) -> bool {
    let n = g.n();
    !(0..n).any(|x| (x + 1..n).any(|y| naive_twins(g, x, y)))
}

pub fn to_dmatrix(m: &SymMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.n(), m.n(), |i, j| m.get(i, j))
}

/// Eigenvalues by nalgebra, descending.
pub fn oracle_eigenvalues(m: &SymMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(to_dmatrix(m)).eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// `(value, multiplicity)` groups of a descending list, chaining gaps `<= tol`.
pub fn oracle_groups(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut last = f64::NAN;
    let mut sum = 0.0;
    for &v in values {
        if !out.is_empty() && (last - v).abs() <= tol {
            let g = out.last_mut().unwrap();
            g.1 += 1;
            sum += v;
            g.0 = sum / g.1 as f64;
        } else {
            out.push((v, 1));
            sum = v;
        }
        last = v;
    }
    out
}

/// `-1/2 (I - J/n) P (I - J/n)` by explicit matrix products.
pub fn oracle_bilinear_form(p: &SymMatrix) -> DMatrix<f64> {
    let n = p.n();
    let c = DMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } - 1.0 / n as f64);
    -0.5 * &c * to_dmatrix(p) * &c
}

pub fn random_multigraph(rng: &mut ChaCha8Rng, n: usize, max_mult: u32) -> Multigraph {
    let mut g = Multigraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let m = rng.gen_range(0..=max_mult);
            if m > 0 {
                g.add_edge(i, j, m).unwrap();
            }
        }
    }
    g
}

/// Random symmetric zero-diagonal matrix with entries drawn from `values`.
pub fn random_predistance(rng: &mut ChaCha8Rng, n: usize, values: &[f64]) -> SymMatrix {
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = values[rng.gen_range(0..values.len())];
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    SymMatrix::from_rows(&rows).unwrap()
}

pub fn perm_vectors(group: &regemb::PermGroup) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = group.elements().iter().map(|p| p.images().to_vec()).collect();
    v.sort();
    v
}
