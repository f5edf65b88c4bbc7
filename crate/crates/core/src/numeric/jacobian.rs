use super::field::{Dual, Field};
use super::matrix::Matrix;
use crate::error::Error;

/// A map ℝⁿ → ℝᵐ written once for every field.
pub trait SmoothMap: Sync {
    fn dim_in(&self) -> usize;
    fn dim_out(&self) -> usize;
    fn eval<F: Field>(&self, x: &[F]) -> Vec<F>;
}

/// Forward-mode Jacobian: one dual-number sweep per input coordinate.
pub fn jacobian<F: Field, M: SmoothMap + ?Sized>(map: &M, point: &[F]) -> Result<Matrix<F>, Error> {
    let n = map.dim_in();
    if point.len() != n {
        return Err(Error::Dimension(format!("point has {} coordinates, map expects {n}", point.len())));
    }
    let m = map.dim_out();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let x: Vec<Dual<F>> = point
            .iter()
            .enumerate()
            .map(|(k, p)| if k == j { Dual::variable(p.clone()) } else { Dual::constant(p.clone()) })
            .collect();
        let y = map.eval(&x);
        if y.len() != m {
            return Err(Error::Dimension(format!("map returned {} values, declared {m}", y.len())));
        }
        cols.push(y.into_iter().map(|d| d.eps).collect::<Vec<F>>());
    }
    Ok(Matrix::from_cols(&cols))
}

/// Central differences with one Richardson step; used to cross-check `jacobian`.
pub fn central_difference_jacobian<M: SmoothMap + ?Sized>(map: &M, point: &[f64], h: f64) -> Matrix<f64> {
    let n = map.dim_in();
    let diff = |j: usize, h: f64| -> Vec<f64> {
        let mut xp = point.to_vec();
        let mut xm = point.to_vec();
        xp[j] += h;
        xm[j] -= h;
        let fp = map.eval(&xp);
        let fm = map.eval(&xm);
        fp.iter().zip(&fm).map(|(a, b)| (a - b) / (2.0 * h)).collect()
    };
    let cols: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let d1 = diff(j, h);
            let d2 = diff(j, h / 2.0);
            d1.iter().zip(&d2).map(|(a, b)| (4.0 * b - a) / 3.0).collect()
        })
        .collect();
    Matrix::from_cols(&cols)
}
