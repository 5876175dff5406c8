//! Finite sections of the Toeplitz operator `T_f = P₊ M_f P₊` on `𝒦₊`.
//!
//! Convention: the domain is `span{z^k e_i : 0 ≤ k ≤ N}` and the image is kept
//! whole (degrees up to `N + r`), so the kernel computed is exactly
//! `ker T_f` restricted to degree `≤ N`. The cokernel is `ker T_{f*}` on the same
//! domain, because `T_f* = T_{f*}`. Both stabilize once `N ≥ r − 1`; a square
//! compression would report index zero for every loop.

use crate::arith::linalg::{self, Row};
use crate::arith::{GaussianRational, LaurentMatrix};
use crate::error::{Error, Result};
use crate::loops::UnitaryLoop;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedOperator {
    pub depth: usize,
    /// Rows indexed by `(k, i)` with `0 ≤ k ≤ N + r`, columns by `(k, i)` with
    /// `0 ≤ k ≤ N`, both `2k + i`.
    pub matrix: Vec<Row>,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
}

impl TruncatedOperator {
    pub fn index(&self) -> i64 {
        self.kernel_dim as i64 - self.cokernel_dim as i64
    }
}

fn compression(m: &LaurentMatrix, depth: usize, r: usize) -> Vec<Row> {
    let cols = 2 * (depth + 1);
    let rows = 2 * (depth + r + 1);
    let mut out = vec![vec![GaussianRational::zero(); cols]; rows];
    for k in 0..=depth as i64 {
        for j in 0..2 {
            for i in 0..2 {
                for (e, c) in m.get(i, j).terms() {
                    let d = e + k;
                    if d >= 0 {
                        out[(2 * d) as usize + i][(2 * k) as usize + j] = c.clone();
                    }
                }
            }
        }
    }
    out
}

pub fn truncated_operator(f: &UnitaryLoop, depth: usize) -> Result<TruncatedOperator> {
    let r = f.degree_bound();
    if depth < r {
        return Err(Error::TruncationTooSmall { depth, bound: r });
    }
    let cols = 2 * (depth + 1);
    let matrix = compression(f.matrix(), depth, r);
    let adjoint = compression(&f.matrix().star(), depth, r);
    let kernel_dim = cols - linalg::rank(&matrix, cols);
    let cokernel_dim = cols - linalg::rank(&adjoint, cols);
    Ok(TruncatedOperator { depth, matrix, kernel_dim, cokernel_dim })
}
