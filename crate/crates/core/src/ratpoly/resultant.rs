use std::collections::HashMap;

use super::Poly;
use crate::error::{Error, Result};
use crate::scalar::Ring;

/// Sylvester matrix with the rows of `a` above the rows of `b`, coefficients
/// in descending degree.
pub fn sylvester_matrix<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Result<Vec<Vec<R>>> {
    let m = a.degree().ok_or_else(|| Error::InvalidInput("zero polynomial in resultant".into()))?;
    let n = b.degree().ok_or_else(|| Error::InvalidInput("zero polynomial in resultant".into()))?;
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput(
            "resultant needs positive degree in the elimination variable".into(),
        ));
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (p, deg, count) in [(a, m, n), (b, n, m)] {
        for r in 0..count {
            let mut row = vec![R::zero(); size];
            for k in 0..=deg {
                row[r + k] = p.coeff(deg - k);
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Determinant by memoized cofactor expansion, using only ring operations so
/// that it works over polynomial coefficient rings.
pub fn determinant<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    assert!(n <= 24, "determinant size {n} too large for cofactor expansion");
    let mut memo: HashMap<u32, R> = HashMap::new();
    det_rec(m, 0, 0, &mut memo)
}

fn det_rec<R: Ring>(m: &[Vec<R>], row: usize, used: u32, memo: &mut HashMap<u32, R>) -> R {
    let n = m.len();
    if row == n {
        return R::one();
    }
    if let Some(v) = memo.get(&used) {
        return v.clone();
    }
    let mut acc = R::zero();
    let mut free_before = 0usize;
    for col in 0..n {
        if used & (1 << col) != 0 {
            continue;
        }
        let entry = &m[row][col];
        if !entry.is_zero() {
            let minor = det_rec(m, row + 1, used | (1 << col), memo);
            let term = entry.clone() * minor;
            acc = if free_before.is_multiple_of(2) { acc + term } else { acc - term };
        }
        free_before += 1;
    }
    memo.insert(used, acc.clone());
    acc
}

/// Resultant of two polynomials in their common variable.
pub fn resultant<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Result<R> {
    Ok(determinant(&sylvester_matrix(a, b)?))
}
