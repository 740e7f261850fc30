//! Two exact arguments that rule out small rep-n tilings of a right
//! trapezoid without searching.

use crate::angles::{angle_fill_arrangements, FillPart, FillTarget};
use crate::filters::{cover_solutions, CoverQuery};
use crate::trapezoid::TrapezoidSpec;

use super::{scale_factor, SearchError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SmallNVerdict {
    Refuted(String),
    Inconclusive,
}

/// Rules, tried in order:
///
/// * field: `√n` is not in the field of the edge lengths;
/// * rule A: the corner at θ only admits a single θ-corner of a tile, so a
///   lower base or main leg lies on the main leg of `√n·T`, yet every edge
///   cover of that leg uses subsidiary legs only;
/// * rule B: the upper base of `√n·T` is shorter than a lower base, so the
///   tile at its right-angle corner contributes its own upper base, and the
///   rest of the run is shorter than both a lower base and a main leg.
pub fn refute_small_n(t: &TrapezoidSpec, n: u32) -> Result<SmallNVerdict, SearchError> {
    if !t.is_right() {
        return Err(SearchError::Internal("small-n rules need a right trapezoid".into()));
    }
    let Some(s) = scale_factor(n, t.radicand()) else {
        return Ok(SmallNVerdict::Refuted(format!(
            "field: √{} is not in Q(√{})",
            n,
            t.radicand()
        )));
    };
    if n <= 1 {
        return Ok(SmallNVerdict::Inconclusive);
    }

    let corner = match t.theta().rational_tag() {
        Some(th) => angle_fill_arrangements(
            &FillTarget {
                pi: th.ratio(),
                theta: 0,
            },
            t,
            true,
        ),
        None => angle_fill_arrangements(&FillTarget::theta(), t, false),
    };
    let single_theta = corner.len() == 1 && corner[0].parts() == [FillPart::Theta];
    if single_theta {
        let sols = cover_solutions(&CoverQuery::new(t, s.clone())).map_err(|e| SearchError::Internal(e.to_string()))?;
        if sols.iter().all(|c| c.q == 0 && c.r == 0) {
            let listed: Vec<String> = sols.iter().map(|c| c.to_string()).collect();
            return Ok(SmallNVerdict::Refuted(format!(
                "rule A: main leg {} is covered only by subsidiary legs [{}]",
                s,
                listed.join(", ")
            )));
        }
    }

    let ub = &s * t.a();
    if ub < *t.b() {
        let rest = &ub - t.a();
        if rest < *t.b() && rest < crate::exactfield::QuadVal::one() {
            return Ok(SmallNVerdict::Refuted(format!(
                "rule B: upper base {} < lower base {}, residual {} fits no lower base or main leg",
                ub,
                t.b(),
                rest
            )));
        }
    }
    Ok(SmallNVerdict::Inconclusive)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> TrapezoidSpec {
        s.parse().unwrap()
    }

    fn rule(v: SmallNVerdict) -> String {
        match v {
            SmallNVerdict::Refuted(r) => r.split(':').next().unwrap().to_string(),
            SmallNVerdict::Inconclusive => "inconclusive".into(),
        }
    }

    #[test]
    fn target_trapezoid() {
        let r = t("right(theta=1/3*pi, a=1/8)");
        let got: Vec<String> = [3, 4, 9, 12, 16, 25, 18]
            .iter()
            .map(|&n| rule(refute_small_n(&r, n).unwrap()))
            .collect();
        assert_eq!(
            got,
            [
                "rule A",
                "rule B",
                "rule B",
                "rule A",
                "rule B",
                "inconclusive",
                "field"
            ]
        );
        let SmallNVerdict::Refuted(why) = refute_small_n(&r, 9).unwrap() else {
            panic!()
        };
        assert!(why.contains("residual 1/4"), "{}", why);
    }

    #[test]
    fn known_reptile_not_refuted_at_four() {
        assert_eq!(
            refute_small_n(&t("right(theta=1/3*pi, a=1/2)"), 4).unwrap(),
            SmallNVerdict::Inconclusive
        );
        assert_eq!(
            refute_small_n(&t("right(theta=1/3*pi, a=1)"), 4).unwrap(),
            SmallNVerdict::Inconclusive
        );
    }
}
