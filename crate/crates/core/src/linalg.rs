//! Cyclic Jacobi eigensolver for dense symmetric matrices and a few vector
//! helpers.

use crate::error::{Error, Result};
use crate::graph::SymMatrix;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order; `vectors[c]` is the unit eigenvector for
/// `values[c]`.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Vec<Vec<f64>>,
}

/// Full eigendecomposition by cyclic Jacobi rotations.
///
/// Rotation order is fixed (row-major over the upper triangle), so the output
/// is bit-for-bit reproducible for a given input.
pub fn sym_eigen(m: &SymMatrix) -> Result<SymEigen> {
    let n = m.n();
    let mut a: Vec<f64> = (0..n).flat_map(|i| m.row(i).to_vec()).collect();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = (f64::EPSILON * frob).powi(2);
    let mut converged = n < 2 || frob == 0.0;
    let mut sweep = 0;
    while !converged {
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
        }
        sweep += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let g = 100.0 * a[p * n + q].abs();
                if sweep > 4
                    && a[p * n + p].abs() + g == a[p * n + p].abs()
                    && a[q * n + q].abs() + g == a[q * n + q].abs()
                {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                rotate(&mut a, &mut v, n, p, q);
            }
        }
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].powi(2))
            .sum();
        converged = off <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[y * n + y].total_cmp(&a[x * n + x]).then(x.cmp(&y)));
    let values = order.iter().map(|&c| a[c * n + c]).collect();
    let vectors = order.iter().map(|&c| (0..n).map(|r| v[r * n + c]).collect()).collect();
    Ok(SymEigen { values, vectors })
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.is_infinite() { 0.0 } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
    if t == 0.0 {
        // off-diagonal entry negligible against the diagonal gap
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        return;
    }
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let arp = a[r * n + p];
        let arq = a[r * n + q];
        let new_rp = arp - s * (arq + tau * arp);
        let new_rq = arq + s * (arp - tau * arq);
        a[r * n + p] = new_rp;
        a[p * n + r] = new_rp;
        a[r * n + q] = new_rq;
        a[q * n + r] = new_rq;
    }
    for r in 0..n {
        let vrp = v[r * n + p];
        let vrq = v[r * n + q];
        v[r * n + p] = vrp - s * (vrq + tau * vrp);
        v[r * n + q] = vrq + s * (vrp - tau * vrq);
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Orthonormal basis of the complement of the all-ones vector (Helmert
/// contrasts). Column `k` is `(1, .., 1, -(k+1), 0, ..) / sqrt((k+1)(k+2))`.
pub fn ones_complement_basis(n: usize) -> Vec<Vec<f64>> {
    (1..n)
        .map(|k| {
            let scale = 1.0 / ((k * (k + 1)) as f64).sqrt();
            (0..n)
                .map(|i| match i.cmp(&k) {
                    std::cmp::Ordering::Less => scale,
                    std::cmp::Ordering::Equal => -(k as f64) * scale,
                    std::cmp::Ordering::Greater => 0.0,
                })
                .collect()
        })
        .collect()
}

/// `Q^T M Q` for a column basis `q`.
pub fn project(m: &SymMatrix, q: &[Vec<f64>]) -> SymMatrix {
    let mq: Vec<Vec<f64>> = q.iter().map(|col| m.mul_vec(col)).collect();
    SymMatrix::from_fn(q.len(), |a, b| dot(&q[a], &mq[b]))
}
