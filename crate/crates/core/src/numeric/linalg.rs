//! Elimination-based rank, kernel, solve and inverse.
//!
//! Exact entries are tested for zero exactly; float entries against a
//! threshold scaled by the largest entry of the input.

use super::field::Field;
use super::matrix::Matrix;
use super::scalar::Tolerance;
use crate::error::Error;

fn negligible<F: Field>(x: &F, thresh: f64) -> bool {
    if x.is_exact() {
        x.is_zero_exact()
    } else {
        x.magnitude() <= thresh
    }
}

fn threshold<F: Field>(m: &Matrix<F>, tol: &Tolerance) -> f64 {
    tol.abs_tol + tol.rel_tol * m.max_abs()
}

/// Reduced row echelon form and pivot columns.
pub fn rref<F: Field>(m: &Matrix<F>, tol: &Tolerance) -> (Matrix<F>, Vec<usize>) {
    let thresh = threshold(m, tol);
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut best = None;
        let mut best_mag = -1.0;
        for i in r..rows {
            if negligible(&a[(i, c)], thresh) {
                continue;
            }
            let mag = a[(i, c)].magnitude();
            if mag > best_mag {
                best_mag = mag;
                best = Some(i);
            }
        }
        let Some(p) = best else {
            for i in r..rows {
                a[(i, c)] = F::zero();
            }
            continue;
        };
        if p != r {
            for j in 0..cols {
                let t = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = t;
            }
        }
        let piv = a[(r, c)].clone();
        for j in 0..cols {
            a[(r, j)] = a[(r, j)].clone() / piv.clone();
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[(i, c)].clone();
            if f.is_zero_exact() {
                continue;
            }
            for j in 0..cols {
                a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>, tol: &Tolerance) -> usize {
    rref(m, tol).1.len()
}

/// Basis of the right kernel, one vector per free column.
pub fn kernel<F: Field>(m: &Matrix<F>, tol: &Tolerance) -> Vec<Vec<F>> {
    let (r, pivots) = rref(m, tol);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); n];
            v[f] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, f)].clone();
            }
            v
        })
        .collect()
}

/// Solve a square system; errors when singular.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F], tol: &Tolerance) -> Result<Vec<F>, Error> {
    if !a.is_square() || a.rows() != b.len() {
        return Err(Error::Dimension("solve needs a square system".into()));
    }
    let n = a.rows();
    let aug = Matrix::from_fn(n, n + 1, |i, j| if j < n { a[(i, j)].clone() } else { b[i].clone() });
    let (r, pivots) = rref(&aug, tol);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    Ok((0..n).map(|i| r[(i, n)].clone()).collect())
}

pub fn inverse<F: Field>(a: &Matrix<F>, tol: &Tolerance) -> Result<Matrix<F>, Error> {
    if !a.is_square() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let n = a.rows();
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else if j - n == i {
            F::one()
        } else {
            F::zero()
        }
    });
    let (r, pivots) = rref(&aug, tol);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    Ok(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
}

/// Determinant by elimination.
pub fn det<F: Field>(a: &Matrix<F>) -> F {
    assert!(a.is_square());
    let n = a.rows();
    let mut m = a.clone();
    let mut d = F::one();
    for c in 0..n {
        let mut p = None;
        let mut best = -1.0;
        for i in c..n {
            if m[(i, c)].is_zero_exact() {
                continue;
            }
            let mag = m[(i, c)].magnitude();
            if mag > best {
                best = mag;
                p = Some(i);
            }
        }
        let Some(p) = p else { return F::zero() };
        if p != c {
            for j in 0..n {
                let t = m[(p, j)].clone();
                m[(p, j)] = m[(c, j)].clone();
                m[(c, j)] = t;
            }
            d = -d;
        }
        let piv = m[(c, c)].clone();
        d = d * piv.clone();
        for i in c + 1..n {
            let f = m[(i, c)].clone() / piv.clone();
            for j in c..n {
                m[(i, j)] = m[(i, j)].clone() - f.clone() * m[(c, j)].clone();
            }
        }
    }
    d
}

/// Basis of the column space, taken from the pivot columns of `m`.
pub fn column_space<F: Field>(m: &Matrix<F>, tol: &Tolerance) -> Vec<Vec<F>> {
    rref(m, tol).1.into_iter().map(|c| m.col(c)).collect()
}
