//! The transvection group of N(κ) on ℝ² × ℝ × ℝ².

use crate::error::{Error, Result};
use crate::numeric::{linalg, Field, Matrix, Scalar, Tolerance};

#[derive(Clone, Debug, PartialEq)]
pub struct NGroupElement<F = Scalar> {
    pub z: [F; 2],
    pub a: F,
    pub l: [F; 2],
}

impl<F: Field> NGroupElement<F> {
    pub fn new(z: [F; 2], a: F, l: [F; 2]) -> Self {
        NGroupElement { z, a, l }
    }

    pub fn identity() -> Self {
        NGroupElement { z: [F::zero(), F::zero()], a: F::zero(), l: [F::zero(), F::zero()] }
    }

    pub fn to_vec(&self) -> Vec<F> {
        vec![self.z[0].clone(), self.z[1].clone(), self.a.clone(), self.l[0].clone(), self.l[1].clone()]
    }

    pub fn from_slice(x: &[F]) -> Self {
        NGroupElement { z: [x[0].clone(), x[1].clone()], a: x[2].clone(), l: [x[3].clone(), x[4].clone()] }
    }
}

/// α(l, l̂) = l1 l̂2 − l2 l̂1.
pub fn alpha<F: Field>(l: &[F; 2], m: &[F; 2]) -> F {
    l[0].clone() * m[1].clone() - l[1].clone() * m[0].clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NGroup {
    pub kappa: i64,
}

impl NGroup {
    pub fn new(kappa: i64) -> Result<Self> {
        if kappa != 1 && kappa != -1 {
            return Err(Error::InvalidParameter(format!("κ must be ±1, got {kappa}")));
        }
        Ok(NGroup { kappa })
    }

    pub fn mul<F: Field>(&self, x: &NGroupElement<F>, y: &NGroupElement<F>) -> NGroupElement<F> {
        let k = F::from_int(self.kappa);
        let third = F::from_ratio(1, 3);
        let half = F::from_ratio(1, 2);
        let al = alpha(&x.l, &y.l);
        let z = std::array::from_fn(|i| {
            x.z[i].clone()
                + y.z[i].clone()
                + k.clone() * third.clone() * al.clone() * (x.l[i].clone() + half.clone() * y.l[i].clone())
                + k.clone() * y.a.clone() * x.l[i].clone()
        });
        NGroupElement {
            z,
            a: x.a.clone() + y.a.clone() + half.clone() * al,
            l: [x.l[0].clone() + y.l[0].clone(), x.l[1].clone() + y.l[1].clone()],
        }
    }

    pub fn inverse<F: Field>(&self, x: &NGroupElement<F>) -> NGroupElement<F> {
        let k = F::from_int(self.kappa);
        NGroupElement {
            z: std::array::from_fn(|i| -x.z[i].clone() + k.clone() * x.a.clone() * x.l[i].clone()),
            a: -x.a.clone(),
            l: [-x.l[0].clone(), -x.l[1].clone()],
        }
    }

    /// Φ((z,a,l)Ĝ₊) = (z − κal, l) as (v1, v2, u1, u2).
    pub fn chart_phi<F: Field>(&self, g: &NGroupElement<F>) -> Vec<F> {
        let k = F::from_int(self.kappa);
        vec![
            g.z[0].clone() - k.clone() * g.a.clone() * g.l[0].clone(),
            g.z[1].clone() - k * g.a.clone() * g.l[1].clone(),
            g.l[0].clone(),
            g.l[1].clone(),
        ]
    }

    pub fn chart_phi_inverse<F: Field>(&self, p: &[F]) -> NGroupElement<F> {
        NGroupElement { z: [p[0].clone(), p[1].clone()], a: F::zero(), l: [p[2].clone(), p[3].clone()] }
    }

    /// Closed form of (z,a,l)·S·(v,u).
    pub fn act_formula<F: Field>(&self, g: &NGroupElement<F>, s: &SlPm2, p: &[F]) -> Vec<F> {
        let k = F::from_int(self.kappa);
        let (sv, su) = s.apply_chart(p);
        let al = alpha(&g.l, &su);
        let third = F::from_ratio(1, 3);
        let half = F::from_ratio(1, 2);
        let mut out = Vec::with_capacity(4);
        for i in 0..2 {
            out.push(
                sv[i].clone() + g.z[i].clone()
                    - k.clone() * third.clone() * al.clone() * (su[i].clone() + half.clone() * g.l[i].clone())
                    - k.clone() * g.a.clone() * (su[i].clone() + g.l[i].clone()),
            );
        }
        out.push(su[0].clone() + g.l[0].clone());
        out.push(su[1].clone() + g.l[1].clone());
        out
    }
}

/// S ∈ SL±(2,ℝ).
#[derive(Clone, Debug, PartialEq)]
pub struct SlPm2 {
    pub m: Matrix,
    pub det_sign: i64,
}

impl SlPm2 {
    pub fn new(m: Matrix, tol: &Tolerance) -> Result<Self> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::Dimension("SL±(2) element must be 2×2".into()));
        }
        let d = linalg::det(&m);
        let det_sign = if tol.close(&d, &Scalar::int(1)) {
            1
        } else if tol.close(&d, &Scalar::int(-1)) {
            -1
        } else {
            return Err(Error::NotInGroup(format!("|det S| = {} ≠ 1", d.render())));
        };
        Ok(SlPm2 { m, det_sign })
    }

    pub fn identity() -> Self {
        SlPm2 { m: Matrix::identity(2), det_sign: 1 }
    }

    pub fn compose(&self, o: &SlPm2) -> SlPm2 {
        SlPm2 { m: self.m.mul(&o.m), det_sign: self.det_sign * o.det_sign }
    }

    /// (z,a,l) ↦ (|S|Sz, |S|a, Sl).
    pub fn apply<F: Field>(&self, g: &NGroupElement<F>) -> NGroupElement<F> {
        let s = Matrix::<F>::lift(&self.m);
        let d = F::from_int(self.det_sign);
        let sz = s.mul_vec(&g.z);
        let sl = s.mul_vec(&g.l);
        NGroupElement {
            z: [d.clone() * sz[0].clone(), d.clone() * sz[1].clone()],
            a: d * g.a.clone(),
            l: [sl[0].clone(), sl[1].clone()],
        }
    }

    /// (v,u) ↦ (|S|Sv, Su), returned as the two halves.
    pub fn apply_chart<F: Field>(&self, p: &[F]) -> ([F; 2], [F; 2]) {
        let s = Matrix::<F>::lift(&self.m);
        let d = F::from_int(self.det_sign);
        let sv = s.mul_vec(&p[0..2]);
        let su = s.mul_vec(&p[2..4]);
        ([d.clone() * sv[0].clone(), d * sv[1].clone()], [su[0].clone(), su[1].clone()])
    }
}
