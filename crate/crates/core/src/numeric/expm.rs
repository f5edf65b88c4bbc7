use super::field::Field;
use super::matrix::Matrix;
use crate::error::Error;

const TAYLOR_TERMS: usize = 20;

/// `exp(tL)`.
///
/// Exact inputs whose product `tL` is nilpotent give the terminating series.
/// Everything else goes through scaling and squaring on the float path.
pub fn matrix_exp<F: Field>(l: &Matrix<F>, t: &F) -> Result<Matrix<F>, Error> {
    if !l.is_square() {
        return Err(Error::Dimension("matrix_exp needs a square matrix".into()));
    }
    let n = l.rows();
    let a = l.scale(t);
    if a.all_exact() {
        if let Some(series) = nilpotent_series(&a) {
            return Ok(series);
        }
    }
    let a = a.to_approx();
    let norm = a.norm_inf();
    let mut s = 0u32;
    if norm > 0.5 {
        s = (norm / 0.5).log2().ceil() as u32;
    }
    let scaled = a.scale(&F::from_scalar(&super::scalar::Scalar::Float(0.5f64.powi(s as i32))));
    let mut sum = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=TAYLOR_TERMS {
        term = term.mul(&scaled).scale(&F::from_scalar(&super::scalar::Scalar::Float(1.0 / k as f64)));
        sum = sum.add(&term);
    }
    for _ in 0..s {
        sum = sum.mul(&sum);
    }
    Ok(sum)
}

/// Finite series when `a` is nilpotent (checked exactly), else `None`.
fn nilpotent_series<F: Field>(a: &Matrix<F>) -> Option<Matrix<F>> {
    let n = a.rows();
    let mut sum = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=n {
        term = term.mul(a).scale(&(F::one() / F::from_int(k as i64)));
        if term.is_zero_exact() {
            return Some(sum);
        }
        sum = sum.add(&term);
    }
    if term.mul(a).is_zero_exact() {
        Some(sum)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::scalar::Scalar;

    #[test]
    fn zero_gives_identity() {
        let z: Matrix = Matrix::zeros(3, 3);
        assert_eq!(matrix_exp(&z, &Scalar::int(1)).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn nilpotent_is_exact() {
        let l: Matrix = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let e = matrix_exp(&l, &Scalar::int(1)).unwrap();
        assert!(e.all_exact());
        assert_eq!(e, Matrix::from_ints(&[&[1, 1], &[0, 1]]));
    }

    #[test]
    fn rotation_matches_trig() {
        let l: Matrix<f64> = Matrix::from_rows(vec![vec![0.0, -1.0], vec![1.0, 0.0]]);
        let e = matrix_exp(&l, &3.0).unwrap();
        assert!((e[(0, 0)] - 3.0f64.cos()).abs() < 1e-13);
        assert!((e[(1, 0)] - 3.0f64.sin()).abs() < 1e-13);
    }

    #[test]
    fn non_square_rejected() {
        let l: Matrix = Matrix::zeros(2, 3);
        assert!(matrix_exp(&l, &Scalar::int(1)).is_err());
    }
}

#[cfg(test)]
mod series_oracle {
    use super::*;
    use crate::catalog::{l_of, SpaceSpec};
    use crate::numeric::scalar::Scalar;

    /// Σ_{k<60} (tL)^k / k!, summed in exact rationals.
    fn oracle(l: &Matrix, t: &Scalar) -> Matrix {
        let a = l.scale(t);
        let mut sum = Matrix::identity(l.rows());
        let mut term = Matrix::identity(l.rows());
        for k in 1..60 {
            term = term.mul(&a).scale(&Scalar::ratio(1, k));
            sum = sum.add(&term);
        }
        sum
    }

    /// exp(L/2) for Y(1,1) and Y(−1,1), frozen from the oracle. The entries
    /// are cos ½, sin ½ (resp. cosh ½, sinh ½) and halves of them.
    const Y11_HALF: [f64; 16] = [
        0.8775825618903728, 0.0, 0.0, 0.479425538604203,
        0.2397127693021015, 0.8775825618903728, 0.479425538604203, -0.4387912809451864,
        0.4387912809451864, -0.479425538604203, 0.8775825618903728, 0.2397127693021015,
        -0.479425538604203, 0.0, 0.0, 0.8775825618903728,
    ];
    const YM11_HALF: [f64; 16] = [
        1.1276259652063807, 0.0, 0.0, 0.5210953054937474,
        -0.2605476527468737, 1.1276259652063807, 0.5210953054937474, -0.5638129826031903,
        -0.5638129826031903, 0.5210953054937474, 1.1276259652063807, -0.2605476527468737,
        0.5210953054937474, 0.0, 0.0, 1.1276259652063807,
    ];

    #[test]
    fn y_exponential_matches_series() {
        let half = Scalar::ratio(1, 2);
        for (eps, frozen) in [(1, Y11_HALF), (-1, YM11_HALF)] {
            let l = l_of(&SpaceSpec::y(eps, 1).unwrap()).unwrap();
            let o = oracle(&l, &half).to_f64();
            let e = matrix_exp(&l, &half).unwrap().to_f64();
            for (k, want) in frozen.iter().enumerate() {
                assert!((o.entries()[k] - want).abs() <= 1e-15, "Y({eps},1) oracle entry {k}");
                assert!((e.entries()[k] - want).abs() <= 1e-13, "Y({eps},1) entry {k}");
            }
        }
        for (eps, kappa) in [(1, -1), (-1, -1)] {
            let l = l_of(&SpaceSpec::y(eps, kappa).unwrap()).unwrap();
            let d = matrix_exp(&l, &half).unwrap().to_f64().sub(&oracle(&l, &half).to_f64());
            assert!(d.max_abs() <= 1e-13, "Y({eps},{kappa})");
        }
    }
}
