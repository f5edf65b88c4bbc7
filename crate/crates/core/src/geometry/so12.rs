//! Conjugacy type of elements of SO₀(1,2) by the trace rule.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::matrix::form;
use crate::numeric::{linalg, Field, Matrix, Scalar, Tolerance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SO12Class {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl SO12Class {
    pub fn name(self) -> &'static str {
        match self {
            SO12Class::Identity => "Identity",
            SO12Class::Elliptic => "Elliptic",
            SO12Class::Parabolic => "Parabolic",
            SO12Class::Hyperbolic => "Hyperbolic",
        }
    }
}

/// Float-path cutoff for |tr A − 3|.
pub const PARABOLIC_TOL: f64 = 1e-7;

/// Frames in which SO(1,2) is represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum So12Frame {
    /// gram diag(−1, 1, 1)
    Standard,
    /// gram [[0,0,1],[0,1,0],[1,0,0]] (null, space-like, null)
    Null,
}

impl So12Frame {
    pub fn gram(self) -> Matrix {
        match self {
            So12Frame::Standard => Matrix::diag_ints(&[-1, 1, 1]),
            So12Frame::Null => Matrix::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]),
        }
    }

    fn time_like(self) -> Vec<Scalar> {
        match self {
            So12Frame::Standard => vec![Scalar::int(1), Scalar::int(0), Scalar::int(0)],
            So12Frame::Null => vec![Scalar::int(1), Scalar::int(0), Scalar::int(-1)],
        }
    }
}

/// The frame in which `a` preserves the form, if any.
pub fn detect_frame(a: &Matrix, tol: &Tolerance) -> Option<So12Frame> {
    if a.rows() != 3 || a.cols() != 3 {
        return None;
    }
    let bound = tol.abs_tol + tol.rel_tol * a.max_abs().powi(2);
    [So12Frame::Standard, So12Frame::Null].into_iter().find(|f| {
        let g = f.gram();
        let d = a.congruence(&g).sub(&g);
        if d.all_exact() {
            d.is_zero_exact()
        } else {
            d.max_abs() <= bound
        }
    })
}

/// Membership in SO₀(1,2): preserves the form, det = 1, keeps the time cone.
pub fn so012_frame(a: &Matrix, tol: &Tolerance) -> Result<So12Frame> {
    let frame = detect_frame(a, tol).ok_or_else(|| Error::NotInGroup("matrix preserves neither Lorentz form".into()))?;
    let t = frame.time_like();
    let future = form(&frame.gram(), &a.mul_vec(&t), &t).sign() < 0;
    if linalg::det(a).sign() <= 0 || !future {
        return Err(Error::NotInGroup("matrix is not in the identity component SO0(1,2)".into()));
    }
    Ok(frame)
}

pub fn classify_so12(a: &Matrix, tol: &Tolerance) -> Result<SO12Class> {
    classify_so12_with(a, tol, PARABOLIC_TOL)
}

pub fn classify_so12_with(a: &Matrix, tol: &Tolerance, parabolic_tol: f64) -> Result<SO12Class> {
    so012_frame(a, tol)?;
    let id = a.sub(&Matrix::identity(3));
    let is_identity = if id.all_exact() { id.is_zero_exact() } else { id.max_abs() <= tol.abs_tol };
    if is_identity {
        return Ok(SO12Class::Identity);
    }
    let tr = a.trace();
    let three = Scalar::int(3);
    let parabolic = if tr.is_exact() { tr == three } else { (tr.to_f64() - 3.0).abs() <= parabolic_tol };
    Ok(if parabolic {
        SO12Class::Parabolic
    } else if tr > three {
        SO12Class::Hyperbolic
    } else {
        SO12Class::Elliptic
    })
}

/// A nonzero vector with Aw = w for A ≠ I of rank-2 defect: the Euclidean
/// cross product of the two most independent rows of A − I.
pub fn fixed_vector(a: &Matrix) -> Option<Vec<Scalar>> {
    let d = a.sub(&Matrix::identity(3));
    let rows: Vec<Vec<Scalar>> = (0..3).map(|i| d.row(i)).collect();
    let mut best: Option<(f64, Vec<Scalar>)> = None;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let w = crate::groups::cross_eps(1, &rows[i], &rows[j]);
        let n = w.iter().map(|x| x.to_f64().powi(2)).sum::<f64>();
        if best.as_ref().map_or(true, |(m, _)| n > *m) {
            best = Some((n, w));
        }
    }
    best.filter(|(n, w)| *n > 0.0 || w.iter().any(|x| !x.is_zero())).map(|(_, w)| w)
}

/// Sign of ⟨w,w⟩ for the fixed vector: −1 time-like, 0 light-like, 1 space-like.
pub fn fixed_vector_type(a: &Matrix, frame: So12Frame, tol: &Tolerance) -> Option<i32> {
    let w = fixed_vector(a)?;
    let q = form(&frame.gram(), &w, &w);
    let scale: f64 = w.iter().map(|x| x.to_f64().powi(2)).sum();
    if q.is_exact() {
        return Some(q.sign());
    }
    Some(if q.to_f64().abs() <= tol.abs_tol.max(1e-9) * scale { 0 } else { q.sign() })
}
