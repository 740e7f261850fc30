//! Unit trapezoids: main leg of length 1, lower base on the x-axis, main
//! acute angle θ at the origin.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::angles::{cos_sin_exact, AngleError, AnglePi, ExactAngle};
use crate::exactfield::{square_free_part, FieldError, QuadVal, Rat};
use crate::geometry::{Point2, Polygon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrapezoidError {
    #[error("upper base must be positive, got {0}")]
    Degenerate(String),
    #[error("main angle {0} is not acute")]
    NotAcute(String),
    #[error("inconsistent angles: {0}")]
    Inconsistent(String),
    #[error("invalid trapezoid literal `{0}`")]
    Parse(String),
    #[error(transparent)]
    Angle(#[from] AngleError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrapezoidClass {
    Acute,
    Right,
    Obtuse,
}

impl TrapezoidClass {
    /// The sign `c(T)` in `b = a + cos θ + c·h·cos ψ`.
    pub fn sign(self) -> i64 {
        match self {
            TrapezoidClass::Acute => 1,
            TrapezoidClass::Right => 0,
            TrapezoidClass::Obtuse => -1,
        }
    }
}

impl fmt::Display for TrapezoidClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrapezoidClass::Acute => "acute",
            TrapezoidClass::Right => "right",
            TrapezoidClass::Obtuse => "obtuse",
        })
    }
}

/// An angle given either as a rational multiple of π or by exact cos/sin.
#[derive(Debug, Clone)]
pub enum ThetaSpec {
    Pi(AnglePi),
    Exact(ExactAngle),
}

impl ThetaSpec {
    fn resolve(self) -> Result<ExactAngle, AngleError> {
        match self {
            ThetaSpec::Pi(a) => cos_sin_exact(a),
            ThetaSpec::Exact(e) => Ok(e),
        }
    }
}

impl From<AnglePi> for ThetaSpec {
    fn from(a: AnglePi) -> ThetaSpec {
        ThetaSpec::Pi(a)
    }
}

impl From<ExactAngle> for ThetaSpec {
    fn from(e: ExactAngle) -> ThetaSpec {
        ThetaSpec::Exact(e)
    }
}

/// The angle `arccos(c)` for rational `c ∈ (-1, 1)`, with `sin = √(1 − c²)`.
pub fn acos_rational(c: &Rat) -> Result<ExactAngle, TrapezoidError> {
    let bad = || TrapezoidError::Parse(format!("acos({})", c));
    let s2 = &Rat::one() - &(c * c);
    if s2.signum() <= 0 {
        return Err(bad());
    }
    let (Some(m), Some(n)) = (
        num_traits::ToPrimitive::to_u64(&s2.numer()),
        num_traits::ToPrimitive::to_u64(&s2.denom()),
    ) else {
        return Err(bad());
    };
    let mn = m.checked_mul(n).ok_or_else(bad)?;
    let (sq, free) = square_free_part(mn);
    let coeff = Rat::new(sq as i64, n as i64);
    let sinv = QuadVal::new(Rat::zero(), coeff, free)?;
    Ok(ExactAngle::from_cos_sin(QuadVal::rational(c.clone()), sinv)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrapezoidSpec {
    a: QuadVal,
    b: QuadVal,
    h: QuadVal,
    theta: ExactAngle,
    psi: ExactAngle,
    klass: TrapezoidClass,
    isosceles: bool,
    d: u64,
}

/// θ-right trapezoid `R(θ, a)`.
pub fn make_right(theta: impl Into<ThetaSpec>, a: QuadVal) -> Result<TrapezoidSpec, TrapezoidError> {
    let theta = theta.into().resolve()?;
    build(theta, ExactAngle::right(), a, TrapezoidClass::Right)
}

/// Trapezoid with main acute angle θ and subsidiary angle ψ; acute class
/// unless ψ is right.
pub fn make_general(
    theta: impl Into<ThetaSpec>,
    psi: impl Into<ThetaSpec>,
    a: QuadVal,
) -> Result<TrapezoidSpec, TrapezoidError> {
    make_general_with_class(theta, psi, a, TrapezoidClass::Acute)
}

/// As [`make_general`], choosing between the acute and obtuse realizations
/// of a non-right `(θ, ψ)`. Ignored when ψ is right.
pub fn make_general_with_class(
    theta: impl Into<ThetaSpec>,
    psi: impl Into<ThetaSpec>,
    a: QuadVal,
    klass: TrapezoidClass,
) -> Result<TrapezoidSpec, TrapezoidError> {
    let theta = theta.into().resolve()?;
    let psi = psi.into().resolve()?;
    if psi.is_right() {
        return build(theta, psi, a, TrapezoidClass::Right);
    }
    if klass == TrapezoidClass::Right {
        return Err(TrapezoidError::Inconsistent(format!("ψ = {} is not right", psi)));
    }
    build(theta, psi, a, klass)
}

/// Isosceles trapezoid `I(θ, a)`.
pub fn make_iso(theta: impl Into<ThetaSpec>, a: QuadVal) -> Result<TrapezoidSpec, TrapezoidError> {
    let theta = theta.into().resolve()?;
    build(theta.clone(), theta, a, TrapezoidClass::Acute)
}

fn build(
    theta: ExactAngle,
    psi: ExactAngle,
    a: QuadVal,
    klass: TrapezoidClass,
) -> Result<TrapezoidSpec, TrapezoidError> {
    if !a.is_positive() {
        return Err(TrapezoidError::Degenerate(a.to_string()));
    }
    if !theta.is_acute() {
        return Err(TrapezoidError::NotAcute(theta.to_string()));
    }
    if !psi.is_right() && !psi.is_acute() {
        return Err(TrapezoidError::Inconsistent(format!("ψ = {} is obtuse", psi)));
    }
    if theta.cmp_angle(&psi).is_gt() {
        return Err(TrapezoidError::Inconsistent(format!(
            "θ = {} exceeds ψ = {}",
            theta, psi
        )));
    }
    let isosceles = theta.cos() == psi.cos();
    if isosceles && klass == TrapezoidClass::Obtuse {
        return Err(TrapezoidError::Inconsistent(
            "obtuse with θ = ψ is a parallelogram".into(),
        ));
    }
    let h = theta.sin().checked_div(psi.sin())?;
    let c = QuadVal::int(klass.sign());
    let b = a
        .checked_add(theta.cos())?
        .checked_add(&c.checked_mul(&h)?.checked_mul(psi.cos())?)?;
    let d = crate::exactfield::common_radicand([&a, &b, &h, theta.cos(), theta.sin(), psi.cos(), psi.sin()])?;
    Ok(TrapezoidSpec {
        a,
        b,
        h,
        theta,
        psi,
        klass,
        isosceles,
        d,
    })
}

impl TrapezoidSpec {
    /// Upper base length.
    pub fn a(&self) -> &QuadVal {
        &self.a
    }

    /// Lower base length.
    pub fn b(&self) -> &QuadVal {
        &self.b
    }

    /// Subsidiary leg length.
    pub fn h(&self) -> &QuadVal {
        &self.h
    }

    pub fn theta(&self) -> &ExactAngle {
        &self.theta
    }

    pub fn psi(&self) -> &ExactAngle {
        &self.psi
    }

    pub fn klass(&self) -> TrapezoidClass {
        self.klass
    }

    pub fn is_right(&self) -> bool {
        self.klass == TrapezoidClass::Right
    }

    pub fn isosceles(&self) -> bool {
        self.isosceles
    }

    /// The radicand of the field holding every quantity of the tile.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn height(&self) -> &QuadVal {
        self.theta.sin()
    }

    pub fn area(&self) -> QuadVal {
        (&self.a + &self.b) * self.theta.sin().clone() * QuadVal::frac(1, 2)
    }

    /// Side lengths in the order lower base, subsidiary leg, upper base, main leg.
    pub fn sides(&self) -> [QuadVal; 4] {
        [self.b.clone(), self.h.clone(), self.a.clone(), QuadVal::one()]
    }

    /// `scale·T` with lower base on the x-axis and main acute vertex at the
    /// origin, counterclockwise.
    pub fn canonical_polygon(&self, scale: &QuadVal) -> Polygon {
        let c = self.theta.cos();
        let s = self.theta.sin();
        let pts = [
            (QuadVal::zero(), QuadVal::zero()),
            (self.b.clone(), QuadVal::zero()),
            (c + &self.a, s.clone()),
            (c.clone(), s.clone()),
        ];
        Polygon::from_vertices_unchecked(
            pts.into_iter()
                .map(|(x, y)| Point2::new(x * scale.clone(), y * scale.clone()))
                .collect(),
        )
    }

    /// Literal form accepted by [`FromStr`], when both angles are rational
    /// multiples of π or have rational cosine.
    pub fn literal(&self) -> Option<String> {
        let a = self.a.to_string();
        let t = angle_literal(&self.theta)?;
        Some(if self.is_right() {
            format!("right(theta={}, a={})", t, a)
        } else if self.isosceles {
            format!("iso(theta={}, a={})", t, a)
        } else {
            let p = angle_literal(&self.psi)?;
            let mut s = format!("gen(theta={}, psi={}, a={}", t, p, a);
            if self.klass == TrapezoidClass::Obtuse {
                s.push_str(", class=obtuse");
            }
            s.push(')');
            s
        })
    }
}

fn angle_literal(e: &ExactAngle) -> Option<String> {
    match e.rational_tag() {
        Some(t) => Some(t.to_string()),
        None => e.cos().as_rational().map(|c| format!("acos({})", c)),
    }
}

impl fmt::Display for TrapezoidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.literal() {
            Some(s) => f.write_str(&s),
            None => write!(
                f,
                "{}(theta={}, psi={}, a={})",
                self.klass, self.theta, self.psi, self.a
            ),
        }
    }
}

fn parse_angle(s: &str) -> Result<ThetaSpec, TrapezoidError> {
    if let Some(inner) = s.strip_prefix("acos(").and_then(|r| r.strip_suffix(')')) {
        let c: Rat = inner.parse()?;
        return Ok(ThetaSpec::Exact(acos_rational(&c)?));
    }
    Ok(ThetaSpec::Pi(s.parse()?))
}

impl FromStr for TrapezoidSpec {
    type Err = TrapezoidError;

    /// `right(theta=1/3*pi, a=1/8)`, `iso(theta=..., a=...)` or
    /// `gen(theta=..., psi=..., a=...[, class=acute|obtuse])`. Angles may also
    /// be written `acos(p/q)`.
    fn from_str(s: &str) -> Result<TrapezoidSpec, TrapezoidError> {
        let bad = || TrapezoidError::Parse(s.to_string());
        let s = s.trim();
        let (kind, rest) = s.split_once('(').ok_or_else(bad)?;
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let mut theta = None;
        let mut psi = None;
        let mut a = None;
        let mut klass = TrapezoidClass::Acute;
        for kv in body.split(',') {
            let (k, v) = kv.trim().split_once('=').ok_or_else(bad)?;
            match k.trim() {
                "theta" => theta = Some(parse_angle(v.trim())?),
                "psi" => psi = Some(parse_angle(v.trim())?),
                "a" => a = Some(v.trim().parse::<QuadVal>()?),
                "class" => {
                    klass = match v.trim() {
                        "acute" => TrapezoidClass::Acute,
                        "obtuse" => TrapezoidClass::Obtuse,
                        _ => return Err(bad()),
                    }
                }
                _ => return Err(bad()),
            }
        }
        let (theta, a) = (theta.ok_or_else(bad)?, a.ok_or_else(bad)?);
        match (kind.trim(), psi) {
            ("right", None) => make_right(theta, a),
            ("iso", None) => make_iso(theta, a),
            ("gen", Some(psi)) => make_general_with_class(theta, psi, a, klass),
            _ => Err(bad()),
        }
    }
}
