use std::fmt;
use std::str::FromStr;

use super::{GeometryError, Point2, Polygon};
use crate::exactfield::QuadVal;
use crate::trapezoid::{TrapezoidClass, TrapezoidSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionKind {
    /// Trapezoid whose legs run along main legs of copies of `T`.
    MHat,
    /// Trapezoid whose left leg runs along subsidiary legs of copies of `T`.
    SHat,
    /// Staircase of `ρ` steps of width `b − a` and height `h`.
    S2Hat,
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionKind::MHat => "M_hat",
            RegionKind::SHat => "S_hat",
            RegionKind::S2Hat => "S2_hat",
        })
    }
}

impl FromStr for RegionKind {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<RegionKind, GeometryError> {
        match s {
            "M_hat" | "m" => Ok(RegionKind::MHat),
            "S_hat" | "s" => Ok(RegionKind::SHat),
            "S2_hat" | "s2" => Ok(RegionKind::S2Hat),
            _ => Err(GeometryError::FamilyMismatch(format!("unknown region kind `{}`", s))),
        }
    }
}

fn pt(x: QuadVal, y: QuadVal) -> Point2 {
    Point2::new(x, y)
}

/// The region `kind(T, ρ, α)` as a counterclockwise polygon.
pub fn region_family(kind: RegionKind, t: &TrapezoidSpec, rho: u32, alpha: &QuadVal) -> Result<Polygon, GeometryError> {
    if !alpha.is_positive() || rho == 0 {
        return Err(GeometryError::FamilyMismatch("need α > 0 and ρ ≥ 1".into()));
    }
    let r = QuadVal::int(rho as i64);
    let (cos_t, sin_t) = (t.theta().cos(), t.theta().sin());
    let (cos_p, sin_p) = (t.psi().cos(), t.psi().sin());
    let h = t.h();
    let zero = QuadVal::zero;
    let vs = match kind {
        RegionKind::MHat => {
            let c = QuadVal::int(t.klass().sign());
            let top = &r * sin_t;
            let v1 = pt(zero(), zero());
            let v2 = pt(&r * cos_t, top.clone());
            let v3 = pt(&r * cos_t + alpha, top);
            let v4 = pt(&r * &(cos_t + &(&c * &(h * cos_p))) + alpha, zero());
            vec![v1, v4, v3, v2]
        }
        RegionKind::SHat => {
            if t.isosceles() {
                return Err(GeometryError::FamilyMismatch("S_hat needs a non-isosceles T".into()));
            }
            let rh = &r * h;
            let (f, g) = if t.klass() == TrapezoidClass::Obtuse {
                (&r * cos_t, zero())
            } else {
                (&rh * cos_p, &r * &(&(h * cos_p) + cos_t))
            };
            let t1 = pt(zero(), zero());
            let t2 = pt(&rh * cos_p, &rh * sin_p);
            let t3 = pt(f + alpha, &rh * sin_p);
            let t4 = pt(g + alpha, zero());
            vec![t1, t4, t3, t2]
        }
        RegionKind::S2Hat => {
            if !t.is_right() {
                return Err(GeometryError::FamilyMismatch("S2_hat needs a right T".into()));
            }
            let step = t.b() - t.a();
            let k = |i: u32| QuadVal::int(i as i64);
            let last_x = alpha + &(&k(rho - 1) * &step);
            let mut vs = vec![pt(zero(), zero()), pt(last_x.clone(), zero()), pt(last_x, &r * h)];
            for i in (1..=rho).rev() {
                let x = &k(i - 1) * &step;
                vs.push(pt(x.clone(), &k(i) * h));
                if i > 1 {
                    vs.push(pt(x, &k(i - 1) * h));
                }
            }
            vs.dedup();
            vs
        }
    };
    Polygon::new(vs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadVal {
        s.parse().unwrap()
    }

    fn t(s: &str) -> TrapezoidSpec {
        s.parse().unwrap()
    }

    #[test]
    fn m_hat_rho_one_is_the_tile() {
        let r = t("right(theta=1/3*pi, a=1/8)");
        let m = region_family(RegionKind::MHat, &r, 1, &q("1/8")).unwrap();
        assert_eq!(m.vertices()[1], Point2::new(q("5/8"), q("0")));
        assert_eq!(m, r.canonical_polygon(&QuadVal::one()));
    }

    #[test]
    fn m_hat_area_is_trapezoid_formula() {
        let r = t("gen(theta=1/6*pi, psi=1/3*pi, a=1/2, class=obtuse)");
        for rho in 1..=4 {
            let alpha = q("3/7");
            let m = region_family(RegionKind::MHat, &r, rho, &alpha).unwrap();
            let (v1, v2, v3, v4) = (m.vertex(0), m.vertex(3), m.vertex(2), m.vertex(1));
            let bottom = &v4.x - &v1.x;
            let top = &v3.x - &v2.x;
            assert_eq!(m.area(), (bottom + top) * v2.y.clone() * QuadVal::frac(1, 2));
        }
    }

    #[test]
    fn s2_hat_staircase() {
        let r = t("right(theta=1/3*pi, a=1/8)");
        let s = region_family(RegionKind::S2Hat, &r, 2, &q("1")).unwrap();
        assert_eq!(s.len(), 6);
        let h = q("1/2*sqrt(3)");
        assert!(s.vertices().contains(&Point2::new(q("1/2"), h.clone())));
        assert!(s.vertices().contains(&Point2::new(q("1/2"), &h + &h)));
        assert!(s.vertices().contains(&Point2::new(q("3/2"), &h + &h)));
    }

    #[test]
    fn s_hat_obtuse_branch() {
        let r = t("gen(theta=1/6*pi, psi=1/3*pi, a=1, class=obtuse)");
        let s = region_family(RegionKind::SHat, &r, 1, &q("1")).unwrap();
        // t3 = (cos θ + α, h sin ψ), t4 = (α, 0)
        assert_eq!(s.vertex(1), &Point2::new(q("1"), q("0")));
        assert_eq!(s.vertex(2).x, q("1+1/2*sqrt(3)"));
        assert!(region_family(RegionKind::SHat, &t("iso(theta=1/3*pi, a=1)"), 1, &q("1")).is_err());
        assert!(region_family(RegionKind::S2Hat, &r, 1, &q("1")).is_err());
    }

    #[test]
    fn families_are_valid_polygons() {
        for lit in ["right(theta=1/3*pi, a=1/8)", "right(theta=1/4*pi, a=1/2*sqrt(2))"] {
            let r = t(lit);
            for rho in 1..=6 {
                for alpha in ["1/8", "1/2", "1", "3/2"] {
                    for kind in [RegionKind::MHat, RegionKind::SHat, RegionKind::S2Hat] {
                        region_family(kind, &r, rho, &q(alpha)).unwrap();
                    }
                }
            }
        }
    }
}
