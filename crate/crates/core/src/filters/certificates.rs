use std::fmt;

use super::cover::{cover_solutions, CoverQuery, CoverSolution};
use super::FilterError;
use crate::angles::AnglePi;
use crate::exactfield::{qx_decompose, QuadVal, QxCoords, Rat};
use crate::trapezoid::TrapezoidSpec;

/// Outcome of a sufficient-condition check for a covering property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Holds for every ρ by a coefficient identity.
    Symbolic(String),
    /// Holds for every ρ up to the bound.
    UpToBound(u32),
    /// A cover of `ρ`-scaled length violating the property.
    Uncertified { rho: u32, witness: CoverSolution },
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        !matches!(self, Certificate::Uncertified { .. })
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Certificate::Symbolic(_))
    }

    pub fn witness(&self) -> Option<CoverSolution> {
        match self {
            Certificate::Uncertified { witness, .. } => Some(*witness),
            _ => None,
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Symbolic(why) => write!(f, "certified-symbolically ({})", why),
            Certificate::UpToBound(r) => write!(f, "certified-up-to-bound rho<={}", r),
            Certificate::Uncertified { rho, witness } => {
                write!(f, "uncertified rho={} witness={}", rho, witness)
            }
        }
    }
}

/// Coordinates of `a` and `b` over `{1, h}`, when `h` is irrational.
pub(crate) fn ab_coords(t: &TrapezoidSpec) -> Option<(QxCoords, QxCoords)> {
    if t.h().is_rational() {
        return None;
    }
    Some((qx_decompose(t.a(), t.h()).ok()?, qx_decompose(t.b(), t.h()).ok()?))
}

fn bounded(
    t: &TrapezoidSpec,
    rho_max: u32,
    unit: &QuadVal,
    bad: impl Fn(&CoverSolution) -> bool,
) -> Result<Certificate, FilterError> {
    for rho in 1..=rho_max {
        let l = QuadVal::int(rho as i64) * unit;
        if let Some(w) = cover_solutions(&CoverQuery::new(t, l))?.into_iter().find(|c| bad(c)) {
            return Ok(Certificate::Uncertified { rho, witness: w });
        }
    }
    Ok(Certificate::UpToBound(rho_max))
}

/// No lower base can take part in a perfect cover of a segment of integer
/// length (a sufficient condition for main-to-main tilings).
pub fn mtm_certificate(t: &TrapezoidSpec, rho_max: u32) -> Result<Certificate, FilterError> {
    if let Some((ca, cb)) = ab_coords(t) {
        // The h-coordinate of ρ is 0, so p·a_h + q·b_h + s = 0.
        if ca.cx.signum() >= 0 && cb.cx.signum() > 0 {
            return Ok(Certificate::Symbolic("a_h >= 0, b_h > 0".into()));
        }
    }
    bounded(t, rho_max, &QuadVal::one(), |c| c.q > 0)
}

/// No lower base can take part in a perfect cover of a segment of length
/// `ρ·h` (a sufficient condition for sub-to-sub tilings).
pub fn sts_certificate(t: &TrapezoidSpec, rho_max: u32) -> Result<Certificate, FilterError> {
    if t.isosceles() {
        return Err(FilterError::Precondition(
            "sub-to-sub needs a non-isosceles trapezoid".into(),
        ));
    }
    if let Some((ca, cb)) = ab_coords(t) {
        // The rational coordinate of ρ·h is 0, so p·a_1 + q·b_1 + r = 0.
        if ca.c1.signum() >= 0 && cb.c1.signum() > 0 {
            return Ok(Certificate::Symbolic("a_1 >= 0, b_1 > 0".into()));
        }
    }
    bounded(t, rho_max, &t.h().clone(), |c| c.q > 0)
}

/// Covers of integer length by something other than main legs, with the
/// solutions that cannot lie in a row removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictMtmReport {
    pub plain: Certificate,
    pub with_adjacency: Certificate,
    pub excluded: Vec<(u32, CoverSolution)>,
}

/// Every cover of length `ρ ≤ rho_max` uses main legs only.
pub fn strict_mtm_certificate(t: &TrapezoidSpec, rho_max: u32) -> Result<StrictMtmReport, FilterError> {
    let mut plain = None;
    let mut adj = None;
    let mut excluded = Vec::new();
    for rho in 1..=rho_max {
        for c in cover_solutions(&CoverQuery::new(t, QuadVal::int(rho as i64)))? {
            if c.p == 0 && c.q == 0 {
                continue;
            }
            plain.get_or_insert(Certificate::Uncertified { rho, witness: c });
            if c.excluded_by_adjacency() {
                excluded.push((rho, c));
            } else {
                adj.get_or_insert(Certificate::Uncertified { rho, witness: c });
            }
        }
    }
    Ok(StrictMtmReport {
        plain: plain.unwrap_or(Certificate::UpToBound(rho_max)),
        with_adjacency: adj.unwrap_or(Certificate::UpToBound(rho_max)),
        excluded,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SstsCertificate {
    /// No `p ≤ q + 1` with `p·a + q·b = h`.
    Condition1,
    /// `a = h` and `θ ≠ π/4`.
    Condition2,
    Uncertified {
        p: u64,
        q: u64,
    },
}

impl SstsCertificate {
    pub fn is_certified(&self) -> bool {
        !matches!(self, SstsCertificate::Uncertified { .. })
    }
}

impl fmt::Display for SstsCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SstsCertificate::Condition1 => f.write_str("certified (no p<=q+1 with pa+qb=h)"),
            SstsCertificate::Condition2 => f.write_str("certified (a=h, theta!=pi/4)"),
            SstsCertificate::Uncertified { p, q } => write!(f, "uncertified p={} q={}", p, q),
        }
    }
}

/// Stair-like sub-to-sub certificate for right trapezoids.
pub fn ssts_certificate(t: &TrapezoidSpec) -> Result<SstsCertificate, FilterError> {
    if !t.is_right() {
        return Err(FilterError::Precondition(
            "stair-like sub-to-sub needs a right trapezoid".into(),
        ));
    }
    let q = CoverQuery::new(t, t.h().clone());
    let hit = cover_solutions(&q)?
        .into_iter()
        .find(|c| c.r == 0 && c.s == 0 && c.p <= c.q + 1);
    let Some(c) = hit else {
        return Ok(SstsCertificate::Condition1);
    };
    let quarter = AnglePi::new(1, 4).expect("π/4");
    let is_quarter = t.theta().cos() == t.theta().sin() && t.theta().rational_tag() == Some(quarter);
    if t.a() == t.h() && !is_quarter {
        return Ok(SstsCertificate::Condition2);
    }
    Ok(SstsCertificate::Uncertified { p: c.p, q: c.q })
}

/// Whether `target` is a non-negative combination of `gens` in the plane.
fn in_cone(target: (&Rat, &Rat), gens: &[(Rat, Rat)]) -> bool {
    let (tx, ty) = target;
    let cross = |ax: &Rat, ay: &Rat, bx: &Rat, by: &Rat| &(ax * by) - &(ay * bx);
    let dot = |ax: &Rat, ay: &Rat, bx: &Rat, by: &Rat| &(ax * bx) + &(ay * by);
    if tx.is_zero() && ty.is_zero() {
        return true;
    }
    for (gx, gy) in gens {
        if cross(gx, gy, tx, ty).is_zero() && dot(gx, gy, tx, ty).signum() > 0 {
            return true;
        }
    }
    for (i, (ax, ay)) in gens.iter().enumerate() {
        for (bx, by) in &gens[i + 1..] {
            let det = cross(ax, ay, bx, by);
            if det.is_zero() {
                continue;
            }
            // target = x·A + y·B
            let x = &cross(tx, ty, bx, by) / &det;
            let y = &cross(ax, ay, tx, ty) / &det;
            if x.signum() >= 0 && y.signum() >= 0 {
                return true;
            }
        }
    }
    false
}

/// Whether `(ρ − p)·a = q·b + r + s·h` is solvable with `ρ − p > 0` for some
/// non-negative rationals, i.e. `a` lies in the cone spanned by `b`, `1` and
/// `h` over `{1, h}`. Failure rules out rep-μ² for every μ. `None` when `h`
/// is rational.
pub fn gtl_cone_feasible(t: &TrapezoidSpec) -> Option<bool> {
    let (ca, cb) = ab_coords(t)?;
    let gens = [
        (cb.c1.clone(), cb.cx.clone()),
        (Rat::one(), Rat::zero()),
        (Rat::zero(), Rat::one()),
    ];
    Some(in_cone((&ca.c1, &ca.cx), &gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> TrapezoidSpec {
        s.parse().unwrap()
    }

    #[test]
    fn mtm_examples() {
        let c = mtm_certificate(&t("right(theta=1/3*pi, a=1/4*sqrt(3))"), 3).unwrap();
        assert!(c.is_symbolic());
        let c = mtm_certificate(&t("right(theta=1/3*pi, a=1/8)"), 1).unwrap();
        assert_eq!(c.witness(), Some(CoverSolution::new(3, 1, 0, 0)));
        let c = mtm_certificate(&t("right(theta=1/4*pi, a=1/2*sqrt(2))"), 2).unwrap();
        assert!(c.is_symbolic());
    }

    #[test]
    fn sts_examples() {
        assert!(sts_certificate(&t("right(theta=1/3*pi, a=1/8)"), 3)
            .unwrap()
            .is_symbolic());
        let c = sts_certificate(&t("right(theta=1/4*pi, a=1/2*sqrt(2))"), 2).unwrap();
        assert_eq!(
            c,
            Certificate::Uncertified {
                rho: 2,
                witness: CoverSolution::new(0, 1, 0, 0)
            }
        );
        assert!(sts_certificate(&t("iso(theta=1/3*pi, a=1)"), 2).is_err());
    }

    #[test]
    fn strict_mtm_examples() {
        let r = strict_mtm_certificate(&t("right(theta=1/3*pi, a=1/6)"), 1).unwrap();
        assert_eq!(r.plain.witness(), Some(CoverSolution::new(2, 1, 0, 0)));
        assert_eq!(r.excluded, vec![(1, CoverSolution::new(6, 0, 0, 0))]);
        let r = strict_mtm_certificate(&t("right(theta=1/3*pi, a=1/10)"), 1).unwrap();
        assert!(!r.plain.is_certified());
        assert!(r.with_adjacency.is_certified());
        assert!(r.excluded.contains(&(1, CoverSolution::new(4, 1, 0, 0))));
        let r = strict_mtm_certificate(&t("right(theta=1/3*pi, a=1/2)"), 1).unwrap();
        assert_eq!(r.with_adjacency.witness(), Some(CoverSolution::new(0, 1, 0, 0)));
        let r = strict_mtm_certificate(&t("right(theta=1/3*pi, a=1/4*sqrt(3))"), 3).unwrap();
        assert!(r.plain.is_certified());
    }

    #[test]
    fn ssts_examples() {
        assert_eq!(
            ssts_certificate(&t("right(theta=1/3*pi, a=1/8)")).unwrap(),
            SstsCertificate::Condition1
        );
        assert_eq!(
            ssts_certificate(&t("right(theta=1/4*pi, a=1/2*sqrt(2))")).unwrap(),
            SstsCertificate::Uncertified { p: 1, q: 0 }
        );
        assert_eq!(
            ssts_certificate(&t("right(theta=1/3*pi, a=1/2*sqrt(3))")).unwrap(),
            SstsCertificate::Condition2
        );
        assert!(ssts_certificate(&t("iso(theta=1/3*pi, a=1)")).is_err());
    }

    #[test]
    fn cone() {
        assert_eq!(gtl_cone_feasible(&t("right(theta=1/3*pi, a=1/8)")), Some(true));
        // a = 1 − h/2 has α > 0 > β
        assert_eq!(
            gtl_cone_feasible(&t("right(theta=1/3*pi, a=1-1/4*sqrt(3))")),
            Some(false)
        );
        // a = −1/4 + h has α < 0 < β, b = 1/4 + h
        assert_eq!(
            gtl_cone_feasible(&t("right(theta=1/3*pi, a=-1/4+1/2*sqrt(3))")),
            Some(false)
        );
        assert_eq!(
            gtl_cone_feasible(&t("right(theta=1/3*pi, a=-3/4+1/2*sqrt(3))")),
            Some(false)
        );
        assert_eq!(gtl_cone_feasible(&t("iso(theta=1/3*pi, a=1)")), None);
    }
}
