//! Dense exact linear algebra over ℚ(i): reduced row echelon form, rank,
//! null spaces and linear solves.

use super::GaussianRational;

pub type Row = Vec<GaussianRational>;

/// Reduced row echelon form. Zero rows are dropped; pivots are strictly
/// increasing column indices and every pivot entry is one. The result depends
/// only on the row space, which is what makes it a canonical basis.
pub fn rref(rows: Vec<Row>, ncols: usize) -> (Vec<Row>, Vec<usize>) {
    let mut rows: Vec<Row> = rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(p) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, p);
        let inv = rows[top][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[top].iter_mut().skip(col) {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    (rows, pivots)
}

pub fn rank(rows: &[Row], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).1.len()
}

/// Basis of `{x : A x = 0}` where the rows of `a` are the equations.
pub fn nullspace(a: &[Row], ncols: usize) -> Vec<Row> {
    let (r, pivots) = rref(a.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![GaussianRational::zero(); ncols];
            x[f] = GaussianRational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                x[p] = -&row[f];
            }
            x
        })
        .collect()
}

/// Some solution of `A x = b`, or `None` when inconsistent.
pub fn solve(a: &[Row], b: &[GaussianRational], ncols: usize) -> Option<Row> {
    let aug: Vec<Row> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![GaussianRational::zero(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Whether `v` lies in the span of an RREF basis with the given pivots.
pub fn in_rref_span(basis: &[Row], pivots: &[usize], v: &[GaussianRational]) -> bool {
    let mut rest = v.to_vec();
    for (row, &p) in basis.iter().zip(pivots) {
        if rest[p].is_zero() {
            continue;
        }
        let f = rest[p].clone();
        for (x, b) in rest.iter_mut().zip(row) {
            if !b.is_zero() {
                *x -= &(&f * b);
            }
        }
    }
    rest.iter().all(GaussianRational::is_zero)
}

/// Row-vector times matrix: `Σ_i c_i · rows[i]`.
pub fn combine(coeffs: &[GaussianRational], rows: &[Row], ncols: usize) -> Row {
    let mut out = vec![GaussianRational::zero(); ncols];
    for (c, row) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            if !x.is_zero() {
                *o += &(c * x);
            }
        }
    }
    out
}
