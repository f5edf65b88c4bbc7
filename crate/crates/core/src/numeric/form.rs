use super::field::Field;
use super::matrix::Matrix;
use super::scalar::{Scalar, Tolerance};
use crate::error::Error;

/// Symmetric bilinear form given by its gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymBilinearForm {
    gram: Matrix<Scalar>,
}

/// Sylvester counts (positive, negative, zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize, r: usize) -> Self {
        Signature { p, q, r }
    }
}

impl SymBilinearForm {
    pub fn new(gram: Matrix<Scalar>, tol: &Tolerance) -> Result<Self, Error> {
        if !gram.is_square() {
            return Err(Error::Dimension("gram matrix must be square".into()));
        }
        let n = gram.rows();
        for i in 0..n {
            for j in 0..i {
                if !tol.close(&gram[(i, j)], &gram[(j, i)]) {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(SymBilinearForm { gram })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix<Scalar> {
        &self.gram
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        super::matrix::form(&self.gram, x, y)
    }

    pub fn signature(&self, tol: &Tolerance) -> Signature {
        signature(&self.gram, tol)
    }
}

fn negligible<F: Field>(x: &F, thresh: f64) -> bool {
    if x.is_exact() {
        x.is_zero_exact()
    } else {
        x.magnitude() <= thresh
    }
}

/// Sylvester signature by symmetric Gaussian elimination (congruence moves only).
pub fn signature<F: Field>(gram: &Matrix<F>, tol: &Tolerance) -> Signature {
    let n = gram.rows();
    let thresh = tol.abs_tol + tol.rel_tol * gram.max_abs();
    let mut a = gram.clone();
    let (mut p, mut q) = (0, 0);
    let mut k = 0;
    while k < n {
        let diag = (k..n)
            .filter(|&i| !negligible(&a[(i, i)], thresh))
            .max_by(|&i, &j| a[(i, i)].magnitude().total_cmp(&a[(j, j)].magnitude()));
        let piv = match diag {
            Some(i) => i,
            None => {
                let off = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| !negligible(&a[(i, j)], thresh))
                    .max_by(|x, y| a[*x].magnitude().total_cmp(&a[*y].magnitude()));
                let Some((i, j)) = off else { break };
                // e_i <- e_i + e_j makes the (i,i) entry 2 a_ij
                for c in 0..n {
                    a[(i, c)] = a[(i, c)].clone() + a[(j, c)].clone();
                }
                for r in 0..n {
                    a[(r, i)] = a[(r, i)].clone() + a[(r, j)].clone();
                }
                i
            }
        };
        if piv != k {
            for c in 0..n {
                let t = a[(piv, c)].clone();
                a[(piv, c)] = a[(k, c)].clone();
                a[(k, c)] = t;
            }
            for r in 0..n {
                let t = a[(r, piv)].clone();
                a[(r, piv)] = a[(r, k)].clone();
                a[(r, k)] = t;
            }
        }
        let d = a[(k, k)].clone();
        if d.sign() > 0 {
            p += 1;
        } else {
            q += 1;
        }
        for i in k + 1..n {
            let f = a[(i, k)].clone() / d.clone();
            for j in k + 1..n {
                a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
            }
        }
        for i in k + 1..n {
            a[(i, k)] = F::zero();
            a[(k, i)] = F::zero();
        }
        k += 1;
    }
    Signature { p, q, r: n - p - q }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal() {
        let g: Matrix = Matrix::diag_ints(&[1, 1, 1]);
        assert_eq!(signature(&g, &Tolerance::default()), Signature::new(3, 0, 0));
    }

    #[test]
    fn hyperbolic_plane_has_zero_diagonal() {
        let g: Matrix = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(signature(&g, &Tolerance::default()), Signature::new(1, 1, 0));
    }

    #[test]
    fn degenerate() {
        let g: Matrix = Matrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(signature(&g, &Tolerance::default()), Signature::new(1, 0, 1));
        let g: Matrix<f64> = Matrix::from_rows(vec![vec![-2.0, 0.0], vec![0.0, 1e-14]]);
        assert_eq!(signature(&g, &Tolerance::default()), Signature::new(0, 1, 1));
    }

    #[test]
    fn rejects_asymmetric() {
        let g: Matrix = Matrix::from_ints(&[&[0, 1], &[2, 0]]);
        assert!(SymBilinearForm::new(g, &Tolerance::default()).is_err());
    }
}
