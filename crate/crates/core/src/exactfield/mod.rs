//! Exact arithmetic over `Q` and a single quadratic extension `Q(√d)`.
//!
//! Every length and coordinate in the crate is a [`QuadVal`]. Signs and
//! comparisons are decided exactly; nothing here touches floating point
//! except the explicitly approximate `to_f64` helpers used for rendering.

mod quad;
mod rat;

pub(crate) use quad::floor_ratio;
pub use quad::{is_square_free, qv_arith, square_free_part, ArithOp, QuadVal};
pub use rat::Rat;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("radicand mismatch: sqrt({0}) and sqrt({1}) in one computation")]
    RadicandMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("basis {{1, x}} is degenerate: x = {0} is rational")]
    DegenerateBasis(String),
    #[error("enumeration bound does not fit in 64 bits")]
    BoundTooLarge,
    #[error("{0}")]
    Parse(String),
}

/// Coordinates of `y = c1 + cx·x` in the rational vector space spanned by `1`
/// and an irrational `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QxCoords {
    pub c1: Rat,
    pub cx: Rat,
}

impl QxCoords {
    pub fn recombine(&self, x: &QuadVal) -> QuadVal {
        QuadVal::rational(self.c1.clone()) + x.scale(&self.cx)
    }
}

/// Decomposes `y` over the basis `{1, x}`; unique because `x` is irrational.
pub fn qx_decompose(y: &QuadVal, x: &QuadVal) -> Result<QxCoords, FieldError> {
    if x.is_rational() {
        return Err(FieldError::DegenerateBasis(x.to_string()));
    }
    if !y.is_rational() && y.d() != x.d() {
        return Err(FieldError::RadicandMismatch(y.d(), x.d()));
    }
    let cx = y.v() / x.v();
    let c1 = y.u() - &(&cx * x.u());
    Ok(QxCoords { c1, cx })
}

/// The common radicand of a set of values, `1` when all are rational.
pub fn common_radicand<'a>(vals: impl IntoIterator<Item = &'a QuadVal>) -> Result<u64, FieldError> {
    let mut d = 1;
    for v in vals {
        match (d, v.d()) {
            (_, 1) => {}
            (1, e) => d = e,
            (a, b) if a == b => {}
            (a, b) => return Err(FieldError::RadicandMismatch(a, b)),
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadVal {
        s.parse().unwrap()
    }

    #[test]
    fn decompose_rational_y() {
        let c = qx_decompose(&q("5/8"), &q("1/2*sqrt(3)")).unwrap();
        assert_eq!(
            c,
            QxCoords {
                c1: Rat::new(5, 8),
                cx: Rat::zero()
            }
        );
    }

    #[test]
    fn decompose_sqrt2_over_half_sqrt2() {
        let c = qx_decompose(&q("sqrt(2)"), &q("1/2*sqrt(2)")).unwrap();
        assert_eq!(
            c,
            QxCoords {
                c1: Rat::zero(),
                cx: Rat::from_int(2)
            }
        );
    }

    #[test]
    fn decompose_general() {
        let x = q("1+sqrt(3)");
        let y = q("3-sqrt(3)");
        let c = qx_decompose(&y, &x).unwrap();
        assert_eq!(
            c,
            QxCoords {
                c1: Rat::from_int(4),
                cx: Rat::from_int(-1)
            }
        );
        assert_eq!(c.recombine(&x), y);
    }

    #[test]
    fn decompose_rejects_rational_basis() {
        assert!(matches!(
            qx_decompose(&q("1"), &q("2")),
            Err(FieldError::DegenerateBasis(_))
        ));
        assert!(matches!(
            qx_decompose(&q("sqrt(2)"), &q("sqrt(3)")),
            Err(FieldError::RadicandMismatch(2, 3))
        ));
    }
}
