//! Parsing of vectors, matrices and group elements from flag strings.

use sig22::catalog::SpaceSpec;
use sig22::geometry::{IsometryElement, IsometryGroup};
use sig22::groups::{AffineElement, HeisAut, HeisExtElement, NGroupElement, SlPm2};
use sig22::numeric::{Matrix, Scalar, Tolerance};
use sig22::{Error, Result};

/// `1,-2/3,0.5` → scalars (rationals stay exact).
pub fn vector(s: &str) -> Result<Vec<Scalar>> {
    s.split(',').map(|x| x.trim().parse::<Scalar>()).collect()
}

pub fn vector_of(s: &str, n: usize, what: &str) -> Result<Vec<Scalar>> {
    let v = vector(s)?;
    if v.len() != n {
        return Err(Error::Parse(format!("{what} needs {n} comma-separated entries, got {}", v.len())));
    }
    Ok(v)
}

/// `identity`, `diag:a,b,c` or rows separated by `;` (`1,0;0,1`).
pub fn matrix(s: &str, n: usize) -> Result<Matrix> {
    let t = s.trim();
    let m = if t.eq_ignore_ascii_case("identity") || t == "I" {
        Matrix::identity(n)
    } else if let Some(d) = t.strip_prefix("diag:") {
        Matrix::diag(&vector(d)?)
    } else {
        let rows = t.strip_prefix("rows:").unwrap_or(t).split(';').map(vector).collect::<Result<Vec<_>>>()?;
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::Parse(format!("matrix {s:?} is not square")));
        }
        Matrix::from_rows(rows)
    };
    if m.rows() != n || m.cols() != n {
        return Err(Error::Parse(format!("expected a {n}x{n} matrix, got {}x{}", m.rows(), m.cols())));
    }
    Ok(m)
}

/// `identity`, `theta`, `delta:d1,d2`, `o11:<2x2 matrix>`, or a
/// `+`-separated product of these.
pub fn heis_aut(s: &str, tol: &Tolerance) -> Result<HeisAut> {
    let mut out = HeisAut::identity();
    for part in s.split('+') {
        let p = part.trim();
        let f = if p == "identity" {
            HeisAut::identity()
        } else if p == "theta" {
            HeisAut::theta()
        } else if let Some(d) = p.strip_prefix("delta:") {
            let d = vector_of(d, 2, "delta")?;
            let sign = |x: &Scalar| match x.to_f64() {
                v if v == 1.0 => Ok(1),
                v if v == -1.0 => Ok(-1),
                _ => Err(Error::Parse("delta entries must be ±1".into())),
            };
            HeisAut::deltas(sign(&d[0])?, sign(&d[1])?)
        } else if let Some(m) = p.strip_prefix("o11:") {
            HeisAut::o11(&matrix(m, 2)?, tol)?
        } else {
            return Err(Error::Parse(format!("unknown automorphism {p:?}")));
        };
        out = out.compose(&f);
    }
    Ok(out)
}

/// Isometry element for `spec` from the `act` flags.
pub fn element(spec: &SpaceSpec, g: Option<&str>, linear: Option<&str>, b: Option<&str>, tol: &Tolerance) -> Result<IsometryElement> {
    let group = IsometryGroup::for_spec(spec)?;
    let x = match spec {
        SpaceSpec::N { .. } => {
            let g = g.map(|s| vector_of(s, 5, "--g (z1,z2,a,l1,l2)")).transpose()?.unwrap_or_else(|| vec![Scalar::int(0); 5]);
            let s = linear.map(|m| matrix(m, 2)).transpose()?.unwrap_or_else(|| Matrix::identity(2));
            IsometryElement::N { g: NGroupElement::from_slice(&g), s: SlPm2::new(s, tol)? }
        }
        SpaceSpec::Z { .. } | SpaceSpec::Zprime { .. } => {
            let b = b.map(|s| vector_of(s, 3, "--b")).transpose()?.unwrap_or_else(|| vec![Scalar::int(0); 3]);
            let a = linear.map(|m| matrix(m, 3)).transpose()?.unwrap_or_else(|| Matrix::identity(3));
            IsometryElement::Affine(AffineElement::new(b, a))
        }
        _ => {
            let g = g.map(|s| vector_of(s, 6, "--g (z,a1,a2,a3,a4,t)")).transpose()?.unwrap_or_else(|| vec![Scalar::int(0); 6]);
            let aut = linear.map(|s| heis_aut(s, tol)).transpose()?.unwrap_or_else(HeisAut::identity);
            IsometryElement::Heis { g: HeisExtElement::from_slice(&g), aut }
        }
    };
    group.validate(&x, tol)?;
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices() {
        assert_eq!(matrix("identity", 3).unwrap(), Matrix::identity(3));
        assert_eq!(matrix("diag:4,1,1/4", 3).unwrap(), Matrix::diag(&[Scalar::int(4), Scalar::int(1), Scalar::ratio(1, 4)]));
        assert_eq!(matrix("1,0;2,1", 2).unwrap(), Matrix::from_ints(&[&[1, 0], &[2, 1]]));
        assert!(matrix("1,0;2", 2).is_err());
        assert!(matrix("diag:1,2", 3).is_err());
    }

    #[test]
    fn vectors() {
        assert_eq!(vector("1, -2/4").unwrap(), vec![Scalar::int(1), Scalar::ratio(-1, 2)]);
        assert!(vector("1,x").is_err());
        assert!(vector_of("1,2", 3, "p").is_err());
    }
}
