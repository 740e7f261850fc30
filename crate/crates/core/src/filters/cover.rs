use std::fmt;

use crate::exactfield::{floor_ratio, qx_decompose, FieldError, QuadVal, Rat};
use crate::trapezoid::TrapezoidSpec;

/// Non-negative integers with `p·a + q·b + r·1 + s·h = L`: the numbers of
/// upper bases, lower bases, main legs and subsidiary legs on a segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoverSolution {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub s: u64,
}

impl CoverSolution {
    pub fn new(p: u64, q: u64, r: u64, s: u64) -> CoverSolution {
        CoverSolution { p, q, r, s }
    }

    pub fn length(&self, t: &TrapezoidSpec) -> QuadVal {
        let k = |n: u64| QuadVal::int(n as i64);
        k(self.p) * t.a() + k(self.q) * t.b() + k(self.r) + k(self.s) * t.h()
    }

    /// Whether the edges cannot lie on one segment in a row: more than two
    /// upper bases would be adjacent somewhere, or four upper bases would
    /// have to flank a single lower base.
    pub fn excluded_by_adjacency(&self) -> bool {
        let others = self.q + self.r + self.s;
        self.p > 2 * (others + 1) || (self.p == 4 && self.q == 1 && self.r == 0 && self.s == 0)
    }
}

impl fmt::Display for CoverSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.p, self.q, self.r, self.s)
    }
}

/// Side constraints on a cover query.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoverConstraints {
    pub p_lt: Option<u64>,
    pub require_q_zero: bool,
    pub require_p_q_zero: bool,
    pub p_le_q_plus_1: bool,
    pub forbid_triple_ub: bool,
    pub max_total: Option<u64>,
}

impl CoverConstraints {
    fn admits(&self, c: &CoverSolution) -> bool {
        self.p_lt.is_none_or(|b| c.p < b)
            && (!self.require_q_zero || c.q == 0)
            && (!self.require_p_q_zero || (c.p == 0 && c.q == 0))
            && (!self.p_le_q_plus_1 || c.p <= c.q + 1)
            && (!self.forbid_triple_ub || !c.excluded_by_adjacency())
            && self.max_total.is_none_or(|m| c.p + c.q + c.r + c.s <= m)
    }
}

#[derive(Debug, Clone)]
pub struct CoverQuery<'a> {
    pub t: &'a TrapezoidSpec,
    pub l: QuadVal,
    pub constraints: CoverConstraints,
}

impl<'a> CoverQuery<'a> {
    pub fn new(t: &'a TrapezoidSpec, l: QuadVal) -> CoverQuery<'a> {
        CoverQuery {
            t,
            l,
            constraints: CoverConstraints::default(),
        }
    }

    pub fn with(mut self, constraints: CoverConstraints) -> CoverQuery<'a> {
        self.constraints = constraints;
        self
    }
}

fn nonneg_int(r: &Rat) -> Option<u64> {
    if r.signum() < 0 || !r.is_integer() {
        return None;
    }
    num_traits::ToPrimitive::to_u64(&r.numer())
}

/// Every solution of the query, sorted.
///
/// With `h` irrational the equation splits over `{1, h}` into a rational
/// part fixing `r` and an `h` part fixing `s`, so only `p` and `q` are
/// enumerated. Otherwise it splits over `{1, √d}` and `r` is forced by the
/// rational part while `p`, `q`, `s` are enumerated.
pub fn cover_solutions(query: &CoverQuery) -> Result<Vec<CoverSolution>, FieldError> {
    let t = query.t;
    let l = &query.l;
    let (a, b, h) = (t.a(), t.b(), t.h());
    crate::exactfield::common_radicand([a, b, h, l])?;
    let mut out = Vec::new();
    if !l.is_positive() {
        return Ok(out);
    }
    let pmax = floor_ratio(l, a)?;
    if !h.is_rational() {
        let (ca, cb, cl) = (qx_decompose(a, h)?, qx_decompose(b, h)?, qx_decompose(l, h)?);
        for p in 0..=pmax {
            let rem = l - &(QuadVal::int(p as i64) * a);
            let qmax = floor_ratio(&rem, b)?;
            for q in 0..=qmax {
                let (pr, qr) = (Rat::from(p as i64), Rat::from(q as i64));
                let r = &cl.c1 - &(&(&pr * &ca.c1) + &(&qr * &cb.c1));
                let s = &cl.cx - &(&(&pr * &ca.cx) + &(&qr * &cb.cx));
                if let (Some(r), Some(s)) = (nonneg_int(&r), nonneg_int(&s)) {
                    out.push(CoverSolution { p, q, r, s });
                }
            }
        }
    } else {
        let hr = h.u();
        for p in 0..=pmax {
            let rem_p = l - &(QuadVal::int(p as i64) * a);
            let qmax = floor_ratio(&rem_p, b)?;
            for q in 0..=qmax {
                let rem_q = &rem_p - &(QuadVal::int(q as i64) * b);
                if !rem_q.is_rational() {
                    continue;
                }
                let rem = rem_q.u();
                let smax = floor_ratio(&rem_q, h)?;
                for s in 0..=smax {
                    let r = rem - &(&Rat::from(s as i64) * hr);
                    if let Some(r) = nonneg_int(&r) {
                        out.push(CoverSolution { p, q, r, s });
                    }
                }
            }
        }
    }
    out.retain(|c| query.constraints.admits(c));
    out.sort();
    Ok(out)
}

/// A feasibility witness: `p < μ` and
/// `p·a + q·b + r + s·h = ρ·a`.
pub fn gtl_feasible(t: &TrapezoidSpec, mu: u64, rho: u64) -> Result<Option<CoverSolution>, FieldError> {
    let l = QuadVal::int(rho as i64) * t.a();
    let q = CoverQuery::new(t, l).with(CoverConstraints {
        p_lt: Some(mu),
        ..Default::default()
    });
    Ok(cover_solutions(&q)?.into_iter().next())
}
