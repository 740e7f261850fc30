//! Necessary conditions for a trapezoid to be a reptile, as exact
//! predicates with witnesses.

mod certificates;
mod cover;
mod pipeline;

pub use certificates::{
    gtl_cone_feasible, mtm_certificate, ssts_certificate, strict_mtm_certificate, sts_certificate, Certificate,
    SstsCertificate, StrictMtmReport,
};
pub use cover::{cover_solutions, gtl_feasible, CoverConstraints, CoverQuery, CoverSolution};
pub use pipeline::{
    classify, enumerate_right, reptile_refuted, rr_candidates, CandidateVerdict, EnumerateGrid, EnumerateReport,
    FilterEntry, FilterOptions, FilterStatus,
};

use std::fmt;

use thiserror::Error;

use crate::angles::{cos_degree, cos_pi_exact, sin_degree, AnglePi};
use crate::exactfield::FieldError;
use crate::trapezoid::{TrapezoidClass, TrapezoidSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GtMembership {
    Pass,
    /// `h` rational and `a`, `b` rational: survives, but never rep-n for
    /// square-free `n`.
    PassRationalH,
    Fail(String),
}

/// Upper and lower base lengths must lie in the span of `1` and `h`.
pub fn gt_membership(t: &TrapezoidSpec) -> GtMembership {
    if !t.h().is_rational() {
        return GtMembership::Pass;
    }
    match (t.a().is_rational(), t.b().is_rational()) {
        (true, true) => GtMembership::PassRationalH,
        (false, _) => GtMembership::Fail(format!("h rational, a = {} irrational", t.a())),
        (_, false) => GtMembership::Fail(format!("h rational, b = {} irrational", t.b())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gt2Case {
    Case1,
    Case2,
    Case3,
    Refuted,
    NotApplicable,
}

impl fmt::Display for Gt2Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gt2Case::Case1 => "case1",
            Gt2Case::Case2 => "case2",
            Gt2Case::Case3 => "case3",
            Gt2Case::Refuted => "refuted",
            Gt2Case::NotApplicable => "not-applicable",
        })
    }
}

pub(crate) fn is_pi3_right(t: &TrapezoidSpec) -> bool {
    t.is_right() && t.theta().rational_tag() == AnglePi::new(1, 3).ok()
}

/// Sign pattern of the `{1, h}` coordinates of `a` and `b`, for `h`
/// irrational, `b > 1` and `T` not a π/3-right trapezoid.
pub fn gt2_cases(t: &TrapezoidSpec) -> Gt2Case {
    let applicable = !t.h().is_rational() && *t.b() > crate::exactfield::QuadVal::one() && !is_pi3_right(t);
    let Some((ca, cb)) = certificates::ab_coords(t).filter(|_| applicable) else {
        return Gt2Case::NotApplicable;
    };
    let (c1a, cha) = (ca.c1.signum(), ca.cx.signum());
    let (c1b, chb) = (cb.c1.signum(), cb.cx.signum());
    if c1a > 0 && cha < 0 && c1b <= 0 {
        Gt2Case::Case1
    } else if c1a < 0 && cha > 0 && chb <= 0 {
        Gt2Case::Case2
    } else if t.klass() == TrapezoidClass::Obtuse && cha == 0 && chb == 0 {
        Gt2Case::Case3
    } else {
        Gt2Case::Refuted
    }
}

/// For an isosceles trapezoid with θ/π rational: `cos θ` must be rational,
/// which among acute angles happens only at π/3.
pub fn cii_check(theta: AnglePi) -> bool {
    theta.is_acute()
        && cos_pi_exact(&theta.ratio()).is_some_and(|c| c.is_rational())
        && theta == AnglePi::new(1, 3).expect("π/3")
}

/// `cos θ` and `sin θ` both algebraic of degree at most two.
pub fn rii_check(theta: AnglePi) -> bool {
    cos_degree(theta) <= 2 && sin_degree(theta) <= 2
}

/// For a right trapezoid `b − a = cos θ` must lie in the span of `1` and
/// `h = sin θ`.
pub fn angle_field_check(theta: AnglePi) -> Option<bool> {
    let e = crate::angles::cos_sin_exact(theta).ok()?;
    Some(!e.sin().is_rational() || e.cos().is_rational())
}
