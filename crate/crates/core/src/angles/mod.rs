//! Rational multiples of π, their exact cosines and sines, algebraic degrees,
//! and enumeration of the ways tile angles can fill a vertex.

mod fill;

pub use fill::{angle_fill_arrangements, FillArrangement, FillPart, FillTarget};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::exactfield::{FieldError, QuadVal, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trig {
    Cos,
    Sin,
}

impl fmt::Display for Trig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trig::Cos => "cos",
            Trig::Sin => "sin",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AngleError {
    #[error("{which} of {angle} has algebraic degree {degree} > 2")]
    DegreeTooHigh { angle: AnglePi, which: Trig, degree: u64 },
    #[error("angle {0}/{1}·π is outside (0, π)")]
    OutOfRange(i64, i64),
    #[error("cos² + sin² ≠ 1 or sin ≤ 0 for ({0}, {1})")]
    NotUnit(String, String),
    #[error("invalid angle literal `{0}`")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The angle `p·π/q` with `0 < p/q < 1`, stored reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AnglePi {
    p: i64,
    q: i64,
}

impl AnglePi {
    pub fn new(p: i64, q: i64) -> Result<AnglePi, AngleError> {
        if q <= 0 || p <= 0 || p >= q {
            return Err(AngleError::OutOfRange(p, q));
        }
        let g = p.gcd(&q);
        Ok(AnglePi { p: p / g, q: q / g })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// The angle as a multiple of π.
    pub fn ratio(&self) -> Rat {
        Rat::new(self.p, self.q)
    }

    pub fn is_acute(&self) -> bool {
        2 * self.p < self.q
    }

    /// `π − self`.
    pub fn supplement(&self) -> AnglePi {
        AnglePi {
            p: self.q - self.p,
            q: self.q,
        }
    }
}

impl Ord for AnglePi {
    fn cmp(&self, o: &AnglePi) -> Ordering {
        (self.p as i128 * o.q as i128).cmp(&(o.p as i128 * self.q as i128))
    }
}

impl PartialOrd for AnglePi {
    fn partial_cmp(&self, o: &AnglePi) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for AnglePi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}*pi", self.p, self.q)
    }
}

impl FromStr for AnglePi {
    type Err = AngleError;

    /// `p/q*pi`, `p*pi` or `pi/q`.
    fn from_str(s: &str) -> Result<AnglePi, AngleError> {
        let bad = || AngleError::Parse(s.to_string());
        let r: Rat = if let Some(c) = s.strip_suffix("*pi") {
            c.parse().map_err(|_| bad())?
        } else if let Some(den) = s.strip_prefix("pi/") {
            let den: i64 = den.parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            Rat::new(1, den)
        } else if s == "pi" {
            Rat::one()
        } else {
            return Err(bad());
        };
        let (Some(p), Some(q)) = (
            num_traits::ToPrimitive::to_i64(&r.numer()),
            num_traits::ToPrimitive::to_i64(&r.denom()),
        ) else {
            return Err(bad());
        };
        AnglePi::new(p, q)
    }
}

fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Algebraic degree of `cos(r·π)` for rational `r`.
///
/// Writing `r/2 = k/n` in lowest terms, `cos(2πk/n)` has degree `φ(n)/2`
/// for `n ≥ 3` and is rational otherwise.
pub fn cos_degree_of(r: &Rat) -> u64 {
    let half = r / &Rat::from_int(2);
    let n = num_traits::ToPrimitive::to_u64(&half.denom()).expect("denominator fits u64");
    if n <= 2 {
        1
    } else {
        totient(n) / 2
    }
}

pub fn cos_degree(a: AnglePi) -> u64 {
    cos_degree_of(&a.ratio())
}

/// Degree of `sin(a) = cos(π/2 − a)`.
pub fn sin_degree(a: AnglePi) -> u64 {
    cos_degree_of(&(&Rat::new(1, 2) - &a.ratio()))
}

/// Exact `cos(r·π)` whenever it has degree at most two.
pub fn cos_pi_exact(r: &Rat) -> Option<QuadVal> {
    let two = Rat::from_int(2);
    let wraps = Rat::from_bigint((r / &two).floor());
    let mut x = r - &(&wraps * &two);
    if x > Rat::one() {
        x = &two - &x;
    }
    let mut sign = 1;
    if x > Rat::new(1, 2) {
        x = &Rat::one() - &x;
        sign = -1;
    }
    let key = (
        num_traits::ToPrimitive::to_i64(&x.numer())?,
        num_traits::ToPrimitive::to_i64(&x.denom())?,
    );
    let c = match key {
        (0, 1) => QuadVal::one(),
        (1, 6) => QuadVal::surd(1, 2, 3),
        (1, 5) => QuadVal::frac(1, 4) + QuadVal::surd(1, 4, 5),
        (1, 4) => QuadVal::surd(1, 2, 2),
        (1, 3) => QuadVal::frac(1, 2),
        (2, 5) => QuadVal::frac(-1, 4) + QuadVal::surd(1, 4, 5),
        (1, 2) => QuadVal::zero(),
        _ => return None,
    };
    Some(if sign < 0 { -c } else { c })
}

pub fn sin_pi_exact(r: &Rat) -> Option<QuadVal> {
    cos_pi_exact(&(&Rat::new(1, 2) - r))
}

/// An angle in `(0, π)` with exact cosine and sine in one quadratic field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactAngle {
    cosv: QuadVal,
    sinv: QuadVal,
    rational_tag: Option<AnglePi>,
}

impl ExactAngle {
    /// An angle given by its cosine and sine, with no claim that it is a
    /// rational multiple of π.
    pub fn from_cos_sin(cosv: QuadVal, sinv: QuadVal) -> Result<ExactAngle, AngleError> {
        ExactAngle::checked(cosv, sinv, None)
    }

    fn checked(cosv: QuadVal, sinv: QuadVal, rational_tag: Option<AnglePi>) -> Result<ExactAngle, AngleError> {
        let unit = cosv.checked_mul(&cosv)?.checked_add(&sinv.checked_mul(&sinv)?)?;
        if unit != QuadVal::one() || !sinv.is_positive() {
            return Err(AngleError::NotUnit(cosv.to_string(), sinv.to_string()));
        }
        Ok(ExactAngle {
            cosv,
            sinv,
            rational_tag,
        })
    }

    pub fn right() -> ExactAngle {
        cos_sin_exact(AnglePi { p: 1, q: 2 }).expect("π/2 is exact")
    }

    pub fn cos(&self) -> &QuadVal {
        &self.cosv
    }

    pub fn sin(&self) -> &QuadVal {
        &self.sinv
    }

    pub fn rational_tag(&self) -> Option<AnglePi> {
        self.rational_tag
    }

    pub fn is_acute(&self) -> bool {
        self.cosv.is_positive()
    }

    pub fn is_right(&self) -> bool {
        self.cosv.is_zero()
    }

    /// Radicand shared by cosine and sine (`1` when both are rational).
    pub fn radicand(&self) -> Result<u64, FieldError> {
        crate::exactfield::common_radicand([&self.cosv, &self.sinv])
    }

    /// Exact comparison of two angles in `(0, π)`: cosine is decreasing there.
    pub fn cmp_angle(&self, o: &ExactAngle) -> Ordering {
        o.cosv.cmp(&self.cosv)
    }
}

impl fmt::Display for ExactAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rational_tag {
            Some(a) => write!(f, "{}", a),
            None => write!(f, "acos({})", self.cosv),
        }
    }
}

/// Exact `(cos a, sin a)`; fails when either has degree above two.
pub fn cos_sin_exact(a: AnglePi) -> Result<ExactAngle, AngleError> {
    for (which, degree) in [(Trig::Cos, cos_degree(a)), (Trig::Sin, sin_degree(a))] {
        if degree > 2 {
            return Err(AngleError::DegreeTooHigh {
                angle: a,
                which,
                degree,
            });
        }
    }
    let r = a.ratio();
    let c = cos_pi_exact(&r).expect("degree ≤ 2 cosine is tabulated");
    let s = sin_pi_exact(&r).expect("degree ≤ 2 sine is tabulated");
    let e = ExactAngle::checked(c, s, Some(a))?;
    e.radicand()?;
    Ok(e)
}

/// All acute `p·π/q` with `q ≤ qmax` whose cosine has degree at most two.
pub fn deg2_angle_list(qmax: i64) -> Vec<AnglePi> {
    let mut out = Vec::new();
    for q in 2..=qmax {
        for p in 1..q {
            if 2 * p >= q || p.gcd(&q) != 1 {
                continue;
            }
            let a = AnglePi { p, q };
            if cos_degree(a) <= 2 {
                out.push(a);
            }
        }
    }
    out.sort();
    out
}
