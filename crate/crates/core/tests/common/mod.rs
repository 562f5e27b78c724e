#![allow(dead_code)]

use num_complex::Complex64;
use qcpo_core::ComplexMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Real matrix from row literals.
pub fn real<const R: usize, const C: usize>(rows: [[f64; C]; R]) -> ComplexMatrix {
    ComplexMatrix::from_fn(R, C, |i, j| c(rows[i][j], 0.0))
}

pub fn unit(rows: usize, cols: usize, r: usize, col: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols);
    m[(r, col)] = c(1.0, 0.0);
    m
}

/// Rank by Gaussian elimination with partial pivoting, independent of the
/// SVD path used by the library.
pub fn rank_oracle(rows: &[Vec<Complex64>], tol: f64) -> usize {
    let mut a: Vec<Vec<Complex64>> = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..a.len()).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()));
        let Some(p) = pivot else { break };
        if a[p][col].norm() <= tol {
            continue;
        }
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank {
                let f = a[r][col] / a[rank][col];
                let pivot = a[rank].clone();
                for (x, v) in a[r][col..].iter_mut().zip(&pivot[col..]) {
                    *x -= f * v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Each matrix flattened row-major into one coefficient row.
pub fn coefficient_rows(mats: &[ComplexMatrix]) -> Vec<Vec<Complex64>> {
    mats.iter()
        .map(|m| {
            let mut row = Vec::with_capacity(m.len());
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    row.push(m[(i, j)]);
                }
            }
            row
        })
        .collect()
}

pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
