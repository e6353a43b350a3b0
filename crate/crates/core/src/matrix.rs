//! Small integer-matrix helpers on top of `nalgebra`.

use nalgebra::DMatrix;
use num_rational::Rational64;

use crate::error::{Error, Result};

pub type IMat = DMatrix<i64>;

/// Integer vector used for exponents, c-vectors and g-vectors.
pub type IVec = Vec<i64>;

/// `[x]_+ = max(x, 0)`.
#[inline]
pub fn pos(x: i64) -> i64 {
    x.max(0)
}

pub fn from_rows(rows: &[Vec<i64>]) -> Result<IMat> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(Error::Dimension("ragged matrix rows".into()));
    }
    let flat: Vec<i64> = rows.iter().flatten().copied().collect();
    Ok(IMat::from_row_slice(r, c, &flat))
}

pub fn to_rows(m: &IMat) -> Vec<Vec<i64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

pub fn column(m: &IMat, j: usize) -> IVec {
    m.column(j).iter().copied().collect()
}

pub fn mat_vec(m: &IMat, v: &[i64]) -> IVec {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j]).sum())
        .collect()
}

pub fn is_skew(m: &IMat) -> bool {
    m.is_square() && *m == -m.transpose()
}

pub fn diag(entries: &[i64]) -> IMat {
    IMat::from_diagonal(&nalgebra::DVector::from_column_slice(entries))
}

/// Top `n` rows of an `m x n` matrix.
pub fn principal_part(bt: &IMat) -> IMat {
    let n = bt.ncols();
    bt.rows(0, n).into_owned()
}

/// `u^T diag(w) v` over the rationals.
pub fn weighted_dot(u: &[i64], w: &[Rational64], v: &[i64]) -> Rational64 {
    u.iter()
        .zip(w)
        .zip(v)
        .map(|((a, wi), b)| *wi * Rational64::from_integer(a * b))
        .sum()
}

/// Rational matrix product `diag(d) * b`, required to be integral.
pub fn diag_times(d: &[Rational64], b: &IMat) -> Result<IMat> {
    if d.len() != b.nrows() {
        return Err(Error::Dimension(format!(
            "diagonal of length {} against {} rows",
            d.len(),
            b.nrows()
        )));
    }
    let mut out = IMat::zeros(b.nrows(), b.ncols());
    for i in 0..b.nrows() {
        for j in 0..b.ncols() {
            let x = d[i] * Rational64::from_integer(b[(i, j)]);
            if !x.is_integer() {
                return Err(Error::Integrality(format!(
                    "entry ({},{}) of DB is {}",
                    i + 1,
                    j + 1,
                    x
                )));
            }
            out[(i, j)] = x.to_integer();
        }
    }
    Ok(out)
}
