use std::fmt;
use std::ops::{Index, IndexMut};

use super::field::Field;
use super::scalar::Scalar;
use crate::error::Error;

/// Small dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F = Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: Field> Matrix<F> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Result<Self, Error> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Integer entries, for literal data.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| F::from_int(x)).collect()).collect())
    }

    /// Columns given as vectors.
    pub fn from_cols(cols: &[Vec<F>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        Matrix::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| F::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn diag(d: &[F]) -> Self {
        let n = d.len();
        Matrix::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { F::zero() })
    }

    pub fn diag_ints(d: &[i64]) -> Self {
        Matrix::diag(&d.iter().map(|&x| F::from_int(x)).collect::<Vec<_>>())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<F> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Reinterpret a `Scalar` matrix in another field.
    pub fn lift(m: &Matrix<Scalar>) -> Self {
        m.map(F::from_scalar)
    }

    pub fn mul(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        Matrix::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = F::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * o[(k, j)].clone();
            }
            acc
        })
    }

    pub fn try_mul(&self, o: &Matrix<F>) -> Result<Matrix<F>, Error> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(self.mul(o))
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + o[(i, j)].clone())
    }

    pub fn sub(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - o[(i, j)].clone())
    }

    pub fn scale(&self, s: &F) -> Matrix<F> {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn neg(&self) -> Matrix<F> {
        self.map(|x| -x.clone())
    }

    pub fn trace(&self) -> F {
        let mut acc = F::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    /// `selfᵀ · g · self`.
    pub fn congruence(&self, g: &Matrix<F>) -> Matrix<F> {
        self.transpose().mul(g).mul(self)
    }

    pub fn commutator(&self, o: &Matrix<F>) -> Matrix<F> {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn pow(&self, k: u32) -> Matrix<F> {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn all_exact(&self) -> bool {
        self.data.iter().all(Field::is_exact)
    }

    pub fn is_zero_exact(&self) -> bool {
        self.data.iter().all(Field::is_zero_exact)
    }

    pub fn to_approx(&self) -> Matrix<F> {
        self.map(Field::to_approx)
    }

    /// Largest absolute entry (primal parts).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Field::magnitude).fold(0.0, f64::max)
    }

    /// Infinity norm of the primal parts.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].magnitude()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<F> {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn block_diag(blocks: &[&Matrix<F>]) -> Matrix<F> {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Stack matrices with the same column count on top of each other.
    pub fn vstack(blocks: &[Matrix<F>]) -> Matrix<F> {
        let c = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut r = 0;
        for b in blocks {
            assert_eq!(b.cols, c);
            data.extend(b.data.iter().cloned());
            r += b.rows;
        }
        Matrix { rows: r, cols: c, data }
    }
}

impl Matrix<Scalar> {
    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(Scalar::to_f64)
    }
}

impl Matrix<f64> {
    pub fn to_scalar(&self) -> Matrix<Scalar> {
        self.map(|&x| Scalar::Float(x))
    }
}

pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `aᵀ g b`.
pub fn form<F: Field>(g: &Matrix<F>, a: &[F], b: &[F]) -> F {
    dot(a, &g.mul_vec(b))
}

pub fn vec_sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_scale<F: Field>(a: &[F], s: &F) -> Vec<F> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    (0..n).map(|k| if k == i { F::one() } else { F::zero() }).collect()
}

pub fn max_abs_vec<F: Field>(v: &[F]) -> f64 {
    v.iter().map(Field::magnitude).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a: Matrix = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        let b: Matrix = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), Matrix::from_ints(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
    }

    #[test]
    fn shape_errors() {
        assert!(Matrix::<Scalar>::from_vec(2, 2, vec![Scalar::int(1)]).is_err());
        let a: Matrix = Matrix::zeros(2, 3);
        assert!(a.try_mul(&a).is_err());
    }

    #[test]
    fn block_diag_shape() {
        let a: Matrix = Matrix::identity(2);
        let b: Matrix = Matrix::diag_ints(&[5]);
        let d = Matrix::block_diag(&[&a, &b]);
        assert_eq!(d, Matrix::diag_ints(&[1, 1, 5]));
    }
}
