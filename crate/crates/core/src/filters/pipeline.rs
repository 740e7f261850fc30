use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;

use super::certificates::{
    gtl_cone_feasible, mtm_certificate, ssts_certificate, strict_mtm_certificate, sts_certificate,
};
use super::{
    angle_field_check, cii_check, gt2_cases, gt_membership, is_pi3_right, rii_check, FilterError, Gt2Case, GtMembership,
};
use crate::angles::AnglePi;
use crate::exactfield::{QuadVal, Rat};
use crate::trapezoid::{make_right, TrapezoidSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterOptions {
    /// Largest multiple of the unit length examined by bounded certificates.
    pub rho_max: u32,
}

impl Default for FilterOptions {
    fn default() -> Self {
        FilterOptions { rho_max: 6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterStatus {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for FilterStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FilterStatus::Pass => "pass",
            FilterStatus::Fail => "fail",
            FilterStatus::NotApplicable => "n/a",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterEntry {
    pub filter: &'static str,
    pub status: FilterStatus,
    pub witness: String,
}

impl fmt::Display for FilterEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.filter, self.status, self.witness)
    }
}

/// Per-filter results for one trapezoid, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateVerdict {
    pub entries: Vec<FilterEntry>,
}

impl CandidateVerdict {
    pub fn refutation(&self) -> Option<&FilterEntry> {
        self.entries.iter().find(|e| e.status == FilterStatus::Fail)
    }

    pub fn survives(&self) -> bool {
        self.refutation().is_none()
    }

    pub fn entry(&self, filter: &str) -> Option<&FilterEntry> {
        self.entries.iter().find(|e| e.filter == filter)
    }

    /// `filter<TAB>status<TAB>witness` lines followed by a verdict line.
    pub fn report(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            s.push_str(&e.to_string());
            s.push('\n');
        }
        match self.refutation() {
            Some(e) => s.push_str(&format!("verdict\trefuted\t{}\n", e.filter)),
            None => s.push_str("verdict\tsurvives\t\n"),
        }
        s
    }
}

fn entry(filter: &'static str, status: FilterStatus, witness: impl Into<String>) -> FilterEntry {
    FilterEntry {
        filter,
        status,
        witness: witness.into(),
    }
}

fn pass_fail(ok: bool) -> FilterStatus {
    if ok {
        FilterStatus::Pass
    } else {
        FilterStatus::Fail
    }
}

/// Runs every applicable necessary condition on `t`.
pub fn classify(t: &TrapezoidSpec, opts: &FilterOptions) -> Result<CandidateVerdict, FilterError> {
    use FilterStatus::*;
    let mut entries = Vec::new();
    let tag = t.theta().rational_tag();

    entries.push(match gt_membership(t) {
        GtMembership::Pass => entry("gt-membership", Pass, "a, b in Q_h"),
        GtMembership::PassRationalH => entry("gt-membership", Pass, "h rational; not rep-n for square-free n"),
        GtMembership::Fail(why) => entry("gt-membership", Fail, why),
    });

    entries.push(match (t.is_right(), tag) {
        (true, Some(a)) => entry(
            "rii",
            pass_fail(rii_check(a)),
            format!(
                "deg cos={} deg sin={}",
                crate::angles::cos_degree(a),
                crate::angles::sin_degree(a)
            ),
        ),
        (true, None) => entry("rii", Pass, "cos, sin exact in one quadratic field"),
        _ => entry("rii", NotApplicable, ""),
    });

    entries.push(match (t.isosceles(), tag) {
        (true, Some(a)) => entry("cii", pass_fail(cii_check(a)), format!("theta={}", a)),
        _ => entry("cii", NotApplicable, ""),
    });

    entries.push(if t.is_right() {
        let ok = match tag {
            Some(a) => angle_field_check(a).unwrap_or(false),
            None => !t.theta().sin().is_rational() || t.theta().cos().is_rational(),
        };
        entry(
            "angle-field",
            pass_fail(ok),
            format!("cos={} sin={}", t.theta().cos(), t.theta().sin()),
        )
    } else {
        entry("angle-field", NotApplicable, "")
    });

    entries.push(match gtl_cone_feasible(t) {
        Some(true) => entry("gtl-cone", Pass, "a in cone(b, 1, h)"),
        Some(false) => entry("gtl-cone", Fail, format!("a={} outside cone(b, 1, h)", t.a())),
        None => entry("gtl-cone", NotApplicable, "h rational"),
    });

    entries.push(if t.is_right() {
        let mtm = mtm_certificate(t, opts.rho_max)?;
        let ssts = ssts_certificate(t)?;
        let refutes = mtm.is_symbolic() && ssts.is_certified();
        entry("mtm+ssts", pass_fail(!refutes), format!("mtm {}; ssts {}", mtm, ssts))
    } else {
        entry("mtm+ssts", NotApplicable, "")
    });

    entries.push(if is_pi3_right(t) {
        let sts = sts_certificate(t, opts.rho_max)?;
        let strict = strict_mtm_certificate(t, 1)?;
        let refutes = sts.is_symbolic() && strict.with_adjacency.is_certified();
        let excluded: Vec<String> = strict.excluded.iter().map(|(_, c)| c.to_string()).collect();
        entry(
            "sts+strict-mtm",
            pass_fail(!refutes),
            format!(
                "sts {}; strict-mtm {}; excluded-by-adjacency [{}]",
                sts,
                strict.with_adjacency,
                excluded.join(" ")
            ),
        )
    } else {
        entry("sts+strict-mtm", NotApplicable, "")
    });

    let gt2 = gt2_cases(t);
    entries.push(match gt2 {
        Gt2Case::NotApplicable => entry("gt2", NotApplicable, ""),
        _ if t.is_right() => entry(
            "gt2",
            NotApplicable,
            format!("case={} (not used for right trapezoids)", gt2),
        ),
        Gt2Case::Refuted => entry("gt2", Fail, "no sign case holds"),
        c => entry("gt2", Pass, format!("case={}", c)),
    });

    Ok(CandidateVerdict { entries })
}

/// The first failed necessary condition, if any.
pub fn reptile_refuted(t: &TrapezoidSpec, opts: &FilterOptions) -> Result<Option<FilterEntry>, FilterError> {
    Ok(classify(t, opts)?.refutation().cloned())
}

/// Bounds of the `(θ, a)` scan for right trapezoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerateGrid {
    /// θ = pπ/q with q ≤ qmax.
    pub qmax: i64,
    /// a = u/v and a = (u/v)·√d with v ≤ denmax.
    pub denmax: i64,
    /// 0 < a ≤ amax.
    pub amax: Rat,
}

impl Default for EnumerateGrid {
    fn default() -> Self {
        EnumerateGrid {
            qmax: 60,
            denmax: 16,
            amax: Rat::from_int(2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerateReport {
    pub angles_scanned: usize,
    pub angles_surviving: Vec<AnglePi>,
    pub candidates_scanned: usize,
    pub survivors: Vec<(AnglePi, QuadVal)>,
}

fn a_grid(d: u64, grid: &EnumerateGrid) -> Vec<QuadVal> {
    let mut coeffs = BTreeSet::new();
    for v in 1..=grid.denmax {
        let mut u = 1;
        while Rat::new(u, v) <= grid.amax {
            if u.gcd(&v) == 1 {
                coeffs.insert(Rat::new(u, v));
            }
            u += 1;
        }
    }
    let mut out: Vec<QuadVal> = coeffs.iter().cloned().map(QuadVal::rational).collect();
    if d > 1 {
        for c in &coeffs {
            let a = QuadVal::new(Rat::zero(), c.clone(), d).expect("square-free radicand");
            if a <= QuadVal::rational(grid.amax.clone()) {
                out.push(a);
            }
        }
    }
    out
}

/// Scans right trapezoids `R(θ, a)` over the grid and returns the pairs no
/// filter refutes.
pub fn enumerate_right(grid: &EnumerateGrid, opts: &FilterOptions) -> Result<EnumerateReport, FilterError> {
    let mut angles = Vec::new();
    for q in 2..=grid.qmax {
        for p in 1..q {
            if 2 * p < q && p.gcd(&q) == 1 {
                angles.push(AnglePi::new(p, q).expect("acute"));
            }
        }
    }
    angles.sort();
    let angles_scanned = angles.len();
    let surviving: Vec<AnglePi> = angles
        .into_iter()
        .filter(|a| rii_check(*a) && angle_field_check(*a) == Some(true))
        .collect();
    let mut cands = Vec::new();
    for &theta in &surviving {
        let d = crate::angles::cos_sin_exact(theta)
            .and_then(|e| Ok(e.radicand()?))
            .map_err(|e| FilterError::Precondition(e.to_string()))?;
        for a in a_grid(d, grid) {
            cands.push((theta, a));
        }
    }
    let candidates_scanned = cands.len();
    let results: Vec<Result<Option<(AnglePi, QuadVal)>, FilterError>> = cands
        .into_par_iter()
        .map(|(theta, a)| {
            let t = match make_right(theta, a.clone()) {
                Ok(t) => t,
                Err(_) => return Ok(None),
            };
            Ok(classify(&t, opts)?.survives().then_some((theta, a)))
        })
        .collect();
    let mut survivors = Vec::new();
    for r in results {
        if let Some(s) = r? {
            survivors.push(s);
        }
    }
    survivors.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| x.1.to_f64().total_cmp(&y.1.to_f64())));
    Ok(EnumerateReport {
        angles_scanned,
        angles_surviving: surviving,
        candidates_scanned,
        survivors,
    })
}

/// The right trapezoids with θ/π rational that survive every filter, from
/// the default grid.
pub fn rr_candidates() -> Result<Vec<(AnglePi, QuadVal)>, FilterError> {
    Ok(enumerate_right(&EnumerateGrid::default(), &FilterOptions::default())?.survivors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> TrapezoidSpec {
        s.parse().unwrap()
    }

    #[test]
    fn survivor_and_refutations() {
        let o = FilterOptions::default();
        let v = classify(&t("right(theta=1/3*pi, a=1/8)"), &o).unwrap();
        assert!(v.survives(), "{}", v.report());
        let r = reptile_refuted(&t("right(theta=1/3*pi, a=1/4*sqrt(3))"), &o)
            .unwrap()
            .unwrap();
        assert_eq!(r.filter, "mtm+ssts");
        let r = reptile_refuted(&t("iso(theta=1/4*pi, a=1)"), &o).unwrap().unwrap();
        assert!(r.filter == "gt-membership" || r.filter == "cii", "{}", r);
        let r = reptile_refuted(&t("right(theta=1/3*pi, a=1/10)"), &o).unwrap().unwrap();
        assert_eq!(r.filter, "sts+strict-mtm");
        assert!(r.witness.contains("(4,1,0,0)"));
    }

    #[test]
    fn known_reptiles_survive() {
        let o = FilterOptions::default();
        for s in [
            "right(theta=1/4*pi, a=1/2*sqrt(2))",
            "right(theta=1/3*pi, a=1/2)",
            "iso(theta=1/3*pi, a=1)",
            "iso(theta=1/3*pi, a=3/2)",
        ] {
            let v = classify(&t(s), &o).unwrap();
            assert!(v.survives(), "{}\n{}", s, v.report());
        }
    }

    #[test]
    fn report_format() {
        let v = classify(&t("right(theta=1/3*pi, a=1/8)"), &FilterOptions::default()).unwrap();
        let rep = v.report();
        for line in rep.lines() {
            assert_eq!(line.split('\t').count(), 3, "{}", line);
        }
        assert!(rep.ends_with("verdict\tsurvives\t\n"));
    }
}
