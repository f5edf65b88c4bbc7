//! Residual bookkeeping and per-check outcomes.

use serde::Serialize;

use crate::numeric::field::Field;
use crate::numeric::scalar::{render_f64, Scalar, Tolerance};

/// Largest deviation seen by a check, remembering whether every
/// contribution stayed on the exact path.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual {
    pub exact: bool,
    pub value: f64,
}

impl Default for Residual {
    fn default() -> Self {
        Residual::zero()
    }
}

impl Residual {
    pub fn zero() -> Self {
        Residual { exact: true, value: 0.0 }
    }

    pub fn float(value: f64) -> Self {
        Residual { exact: false, value }
    }

    pub fn of<F: Field>(x: &F) -> Self {
        if x.is_exact() {
            if x.is_zero_exact() {
                Residual::zero()
            } else {
                // a nonzero exact residual is a definite failure; keep its size
                Residual { exact: true, value: x.max_abs_component().max(f64::MIN_POSITIVE) }
            }
        } else {
            Residual::float(x.max_abs_component())
        }
    }

    pub fn absorb<F: Field>(&mut self, x: &F) {
        self.merge(Residual::of(x));
    }

    pub fn absorb_all<'a, F: Field + 'a>(&mut self, xs: impl IntoIterator<Item = &'a F>) {
        for x in xs {
            self.absorb(x);
        }
    }

    pub fn absorb_f64(&mut self, x: f64) {
        self.merge(Residual::float(x.abs()));
    }

    pub fn merge(&mut self, o: Residual) {
        self.exact &= o.exact;
        if o.value > self.value || o.value.is_nan() {
            self.value = o.value;
        }
    }

    /// max |a − b|, divided by max(1, |a|, |b|) once floats are involved.
    pub fn relative_diff(a: &[Scalar], b: &[Scalar]) -> Self {
        let mut r = Residual::zero();
        for (x, y) in a.iter().zip(b) {
            r.absorb(&(x - y));
        }
        if !r.exact {
            let size = a.iter().chain(b).map(|x| x.to_f64().abs()).fold(1.0, f64::max);
            r.value /= size;
        }
        r
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact && self.value == 0.0
    }

    /// Exact residuals must vanish; float residuals must stay under `bound`.
    pub fn within(&self, bound: f64) -> bool {
        if self.exact {
            self.value == 0.0
        } else {
            self.value <= bound
        }
    }

    pub fn passes(&self, tol: &Tolerance) -> bool {
        self.within(tol.abs_tol)
    }

    pub fn render(&self) -> String {
        if self.is_exact_zero() {
            "exact".to_string()
        } else {
            render_f64(self.value)
        }
    }
}

impl Serialize for Residual {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub max_residual: Residual,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub fn from_residual(name: impl Into<String>, residual: Residual, samples: usize, bound: f64) -> Self {
        let status = if residual.within(bound) { Status::Pass } else { Status::Fail };
        CheckReport { name: name.into(), status, max_residual: residual, samples, note: None }
    }

    pub fn boolean(name: impl Into<String>, ok: bool, samples: usize) -> Self {
        CheckReport {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            max_residual: Residual::zero(),
            samples,
            note: None,
        }
    }

    pub fn skipped(name: impl Into<String>, why: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            status: Status::Skipped,
            max_residual: Residual::zero(),
            samples: 0,
            note: Some(why.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Render a scalar the way reports do.
pub fn render_scalar(s: &Scalar) -> String {
    s.render()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_zero_renders_exact() {
        let mut r = Residual::zero();
        r.absorb(&Scalar::int(0));
        assert_eq!(r.render(), "exact");
        r.absorb(&Scalar::float(1e-12));
        assert!(!r.exact);
        assert!(r.within(1e-10));
    }

    #[test]
    fn exact_nonzero_fails_any_bound() {
        let r = Residual::of(&Scalar::ratio(1, 1000));
        assert!(!r.within(1.0));
    }
}
