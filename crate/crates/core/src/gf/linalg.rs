//! Gaussian elimination on small dense matrices with entries in F_{q^5}.
//!
//! Matrices whose entries all lie in a subfield stay in that subfield under
//! elimination, so the same routines compute ranks over F_q.

use super::{FieldCtx, Fq5Elem};

pub type Matrix = Vec<Vec<Fq5Elem>>;

/// Row-reduces `m` in place and returns its rank.
fn eliminate(ctx: &FieldCtx, m: &mut Matrix) -> (usize, Fq5Elem) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    // Running determinant factor (meaningful only for square input).
    let mut det = ctx.one();
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        if piv != rank {
            m.swap(piv, rank);
            det = ctx.neg(det);
        }
        let pivot = m[rank][col];
        det = ctx.mul(det, pivot);
        let inv = ctx.inv(pivot);
        for r in (rank + 1)..rows {
            let f = m[r][col];
            if f.is_zero() {
                continue;
            }
            let factor = ctx.mul(f, inv);
            for c in col..cols {
                let t = ctx.mul(factor, m[rank][c]);
                m[r][c] = ctx.sub(m[r][c], t);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    (rank, det)
}

pub fn rank(ctx: &FieldCtx, m: &Matrix) -> usize {
    let mut work = m.clone();
    eliminate(ctx, &mut work).0
}

pub fn det(ctx: &FieldCtx, m: &Matrix) -> Fq5Elem {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut work = m.clone();
    let (r, d) = eliminate(ctx, &mut work);
    if r < n {
        ctx.zero()
    } else {
        d
    }
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(ctx: &FieldCtx, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { ctx.one() } else { ctx.zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(piv, col);
        let inv = ctx.inv(aug[col][col]);
        for c in 0..2 * n {
            aug[col][c] = ctx.mul(aug[col][c], inv);
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let f = aug[r][col];
            for c in 0..2 * n {
                let t = ctx.mul(f, aug[col][c]);
                aug[r][c] = ctx.sub(aug[r][c], t);
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Cofactor expansion along the first row. Exponential, only meant as an
/// independent check on tiny matrices.
pub fn det_by_expansion(ctx: &FieldCtx, m: &Matrix) -> Fq5Elem {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut acc = ctx.zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Matrix = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let term = ctx.mul(m[0][j], det_by_expansion(ctx, &minor));
        acc = if j % 2 == 0 { ctx.add(acc, term) } else { ctx.sub(acc, term) };
    }
    acc
}
