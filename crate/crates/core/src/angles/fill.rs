use std::collections::BTreeSet;
use std::fmt;

use crate::exactfield::Rat;
use crate::trapezoid::TrapezoidSpec;

/// One internal angle (or the straight angle) meeting at a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FillPart {
    Theta,
    ThetaStar,
    Psi,
    PsiStar,
    Right,
    Straight,
}

impl FillPart {
    fn symbol(self) -> &'static str {
        match self {
            FillPart::Theta => "θ",
            FillPart::ThetaStar => "π-θ",
            FillPart::Psi => "ψ",
            FillPart::PsiStar => "π-ψ",
            FillPart::Right => "π/2",
            FillPart::Straight => "π",
        }
    }

    fn formal(self) -> Formal {
        let f = |pi: Rat, theta, psi| Formal { pi, theta, psi };
        match self {
            FillPart::Theta => f(Rat::zero(), 1, 0),
            FillPart::ThetaStar => f(Rat::one(), -1, 0),
            FillPart::Psi => f(Rat::zero(), 0, 1),
            FillPart::PsiStar => f(Rat::one(), 0, -1),
            FillPart::Right => f(Rat::new(1, 2), 0, 0),
            FillPart::Straight => f(Rat::one(), 0, 0),
        }
    }
}

/// Linear form `pi·π + theta·θ + psi·ψ` in the formal symbols θ and ψ.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Formal {
    pi: Rat,
    theta: i64,
    psi: i64,
}

impl Formal {
    fn add(&self, o: &Formal) -> Formal {
        Formal {
            pi: &self.pi + &o.pi,
            theta: self.theta + o.theta,
            psi: self.psi + o.psi,
        }
    }

    fn sub(&self, o: &Formal) -> Formal {
        Formal {
            pi: &self.pi - &o.pi,
            theta: self.theta - o.theta,
            psi: self.psi - o.psi,
        }
    }

    /// Equality of directions modulo π.
    fn eq_mod_pi(&self, o: &Formal) -> bool {
        let d = self.sub(o);
        d.theta == 0 && d.psi == 0 && d.pi.is_integer()
    }
}

/// The angle to be filled, `pi·π + theta·θ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FillTarget {
    pub pi: Rat,
    pub theta: i64,
}

impl FillTarget {
    pub fn full_turn() -> FillTarget {
        FillTarget {
            pi: Rat::from_int(2),
            theta: 0,
        }
    }

    pub fn straight() -> FillTarget {
        FillTarget {
            pi: Rat::one(),
            theta: 0,
        }
    }

    pub fn theta() -> FillTarget {
        FillTarget {
            pi: Rat::zero(),
            theta: 1,
        }
    }
}

/// A cyclic sequence of angles, stored as its lexicographically least
/// rotation or reflection.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FillArrangement {
    parts: Vec<FillPart>,
}

impl FillArrangement {
    pub fn new(parts: Vec<FillPart>) -> FillArrangement {
        FillArrangement {
            parts: canonical(&parts),
        }
    }

    pub fn parts(&self) -> &[FillPart] {
        &self.parts
    }

    /// Exact sum after substituting `theta` (and `psi`) as multiples of π.
    pub fn value_with(&self, theta: &Rat, psi: &Rat) -> Rat {
        self.parts.iter().fold(Rat::zero(), |acc, p| {
            let f = p.formal();
            acc + f.pi + theta * &Rat::from_int(f.theta) + psi * &Rat::from_int(f.psi)
        })
    }
}

impl fmt::Display for FillArrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<_> = self.parts.iter().map(|p| p.symbol()).collect();
        write!(f, "[{}]", s.join(", "))
    }
}

fn canonical(parts: &[FillPart]) -> Vec<FillPart> {
    let n = parts.len();
    let mut best = parts.to_vec();
    let mut rev = parts.to_vec();
    rev.reverse();
    for seq in [parts.to_vec(), rev] {
        for k in 0..n {
            let mut r = seq.clone();
            r.rotate_left(k);
            if r < best {
                best = r;
            }
        }
    }
    best
}

fn next_permutation(v: &mut [FillPart]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn alphabet(tile: &TrapezoidSpec) -> Vec<FillPart> {
    use FillPart::*;
    if tile.is_right() {
        vec![Theta, ThetaStar, Right, Straight]
    } else if tile.isosceles() {
        vec![Theta, ThetaStar, Straight]
    } else {
        vec![Theta, ThetaStar, Psi, PsiStar, Straight]
    }
}

/// Every count vector over `alpha` whose weighted sum equals `target`, with
/// at most one straight angle.
fn multisets(
    alpha: &[FillPart],
    value: &dyn Fn(FillPart) -> Formal,
    target: &Formal,
    max_parts: usize,
) -> Vec<Vec<FillPart>> {
    fn rec(
        i: usize,
        alpha: &[FillPart],
        value: &dyn Fn(FillPart) -> Formal,
        remaining: &Formal,
        left: usize,
        cur: &mut Vec<FillPart>,
        out: &mut Vec<Vec<FillPart>>,
    ) {
        let zero = Formal {
            pi: Rat::zero(),
            theta: 0,
            psi: 0,
        };
        if i == alpha.len() {
            if *remaining == zero && !cur.is_empty() {
                out.push(cur.clone());
            }
            return;
        }
        let part = alpha[i];
        let cap = if part == FillPart::Straight { 1.min(left) } else { left };
        let v = value(part);
        let mut rem = remaining.clone();
        for k in 0..=cap {
            if k > 0 {
                rem = rem.sub(&v);
                cur.push(part);
            }
            rec(i + 1, alpha, value, &rem, left - k, cur, out);
        }
        for _ in 0..cap {
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, alpha, value, target, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Directions (mod π) the tile's base may have, given a part placed between
/// the rays `r0` and `r1`.
fn base_options(part: FillPart, r0: &Formal, r1: &Formal, tile: &TrapezoidSpec) -> Vec<Formal> {
    let th = FillPart::Theta.formal();
    if part != FillPart::Straight {
        return vec![r0.clone(), r1.clone()];
    }
    let mut out = vec![r0.clone(), r0.add(&th), r0.sub(&th)];
    if tile.is_right() {
        out.push(r0.add(&FillPart::Right.formal()));
    } else if !tile.isosceles() {
        let ps = FillPart::Psi.formal();
        out.push(r0.add(&ps));
        out.push(r0.sub(&ps));
    }
    out
}

/// Whether one base direction is shared by every tile around the vertex.
fn parallel_bases(seq: &[FillPart], tile: &TrapezoidSpec) -> bool {
    let mut rays = vec![Formal {
        pi: Rat::zero(),
        theta: 0,
        psi: 0,
    }];
    for p in seq {
        let next = rays.last().unwrap().add(&p.formal());
        rays.push(next);
    }
    let opts: Vec<Vec<Formal>> = seq
        .iter()
        .enumerate()
        .map(|(i, p)| base_options(*p, &rays[i], &rays[i + 1], tile))
        .collect();
    opts[0]
        .iter()
        .any(|beta| opts.iter().all(|o| o.iter().any(|c| c.eq_mod_pi(beta))))
}

/// All cyclic arrangements of the tile's internal angles (and at most one
/// straight angle) summing to `target`, up to rotation and reflection.
///
/// With `theta_rational` the tile's angles are substituted as rational
/// multiples of π. Otherwise θ and ψ are formal symbols: coefficients must
/// match identically, and every tile around the vertex must be able to have
/// its bases along one common direction.
pub fn angle_fill_arrangements(
    target: &FillTarget,
    tile: &TrapezoidSpec,
    theta_rational: bool,
) -> Vec<FillArrangement> {
    let alpha = alphabet(tile);
    let tags = (tile.theta().rational_tag(), tile.psi().rational_tag());
    let rational = match tags {
        (Some(t), Some(p)) if theta_rational => Some((t.ratio(), p.ratio())),
        _ => None,
    };
    let sets = match &rational {
        Some((t, p)) => {
            let value = |part: FillPart| {
                let f = part.formal();
                let pi = f.pi + t * &Rat::from_int(f.theta) + p * &Rat::from_int(f.psi);
                Formal { pi, theta: 0, psi: 0 }
            };
            let total = &target.pi + &(t * &Rat::from_int(target.theta));
            let smallest = alpha
                .iter()
                .map(|&part| value(part).pi)
                .filter(|v| v.signum() > 0)
                .min()
                .unwrap_or_else(Rat::one);
            let max_parts = num_traits::ToPrimitive::to_usize(&(&total / &smallest).floor()).unwrap_or(0);
            let target_val = Formal {
                pi: total,
                theta: 0,
                psi: 0,
            };
            multisets(&alpha, &value, &target_val, max_parts)
        }
        None => {
            // θ* and ψ* each cost π, π/2 costs π/2, so the π budget bounds
            // everything except the θ parts that cancel a θ*.
            let budget = num_traits::ToPrimitive::to_usize(&target.pi.floor()).unwrap_or(0);
            let max_parts = 2 * (2 * budget + 1) + target.theta.max(0) as usize;
            let target_formal = Formal {
                pi: target.pi.clone(),
                theta: target.theta,
                psi: 0,
            };
            multisets(&alpha, &|p: FillPart| p.formal(), &target_formal, max_parts)
        }
    };
    let mut found = BTreeSet::new();
    for mut set in sets {
        if set == [FillPart::Straight] {
            continue;
        }
        set.sort();
        loop {
            let arr = FillArrangement::new(set.clone());
            if !found.contains(&arr) && (rational.is_some() || parallel_bases(&set, tile)) {
                found.insert(arr);
            }
            if !next_permutation(&mut set) {
                break;
            }
        }
    }
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::AnglePi;
    use crate::exactfield::QuadVal;
    use crate::trapezoid::{make_right, ThetaSpec};
    use FillPart::*;

    fn r_pi3(a: QuadVal) -> TrapezoidSpec {
        make_right(ThetaSpec::Pi(AnglePi::new(1, 3).unwrap()), a).unwrap()
    }

    #[test]
    fn six_full_turn_arrangements_for_right_tiles() {
        let t = r_pi3(QuadVal::frac(1, 8));
        let got = angle_fill_arrangements(&FillTarget::full_turn(), &t, false);
        let want: BTreeSet<_> = [
            vec![Right, Right, Right, Right],
            vec![Right, Right, Straight],
            vec![Theta, ThetaStar, Straight],
            vec![Theta, ThetaStar, Right, Right],
            vec![Theta, ThetaStar, Theta, ThetaStar],
            vec![Theta, Theta, ThetaStar, ThetaStar],
        ]
        .into_iter()
        .map(FillArrangement::new)
        .collect();
        assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), want);
    }

    #[test]
    fn theta_target_is_single_theta() {
        let t = r_pi3(QuadVal::one());
        for rational in [false, true] {
            let got = angle_fill_arrangements(&FillTarget::theta(), &t, rational);
            assert_eq!(got, vec![FillArrangement::new(vec![Theta])]);
        }
    }

    #[test]
    fn straight_target_rational() {
        let t = r_pi3(QuadVal::frac(1, 8));
        let got = angle_fill_arrangements(&FillTarget::straight(), &t, true);
        assert!(got.contains(&FillArrangement::new(vec![Right, Right])));
        assert!(got.contains(&FillArrangement::new(vec![Theta, ThetaStar])));
        assert!(got.contains(&FillArrangement::new(vec![Theta, Theta, Theta])));
        for a in &got {
            assert_eq!(a.value_with(&Rat::new(1, 3), &Rat::new(1, 2)), Rat::one());
        }
    }

    #[test]
    fn canonical_form_is_invariant() {
        let a = FillArrangement::new(vec![Right, Theta, ThetaStar, Right]);
        let b = FillArrangement::new(vec![ThetaStar, Theta, Right, Right]);
        assert_eq!(a, b);
    }
}
