//! Independent oracles shared by the property suites and the acceptance run.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reptile_core::filters::CoverSolution;
use reptile_core::geometry::{Location, Point2};
use reptile_core::tiling::{parse_tiling, Tiling};
use reptile_core::{QuadVal, TrapezoidSpec};

/// Sign of `u + v√d` from a 40-digit fixed-point approximation of `√d`,
/// used only when the approximation error cannot flip it.
pub fn approx_sign(x: &QuadVal) -> Option<i32> {
    let den = x.u().denom() * x.v().denom();
    let u = x.u().numer() * x.v().denom();
    let v = x.v().numer() * x.u().denom();
    debug_assert!(den.is_positive());
    let scale = BigInt::from(10u32).pow(40);
    let root = (BigInt::from(x.d()) * &scale * &scale).sqrt();
    let approx = &u * &scale + &v * &root;
    if approx.abs() > v.abs() + 1u32 {
        Some(if approx.is_positive() { 1 } else { -1 })
    } else if v.is_zero() {
        Some(if u.is_zero() {
            0
        } else if u.is_positive() {
            1
        } else {
            -1
        })
    } else {
        None
    }
}

/// Every `(p, q, r, s)` with `p·a + q·b + r + s·h = L`, by exhaustive loops
/// with float bounds padded by one.
pub fn brute_cover(t: &TrapezoidSpec, l: &QuadVal) -> Vec<CoverSolution> {
    let lf = l.to_f64();
    let bound = |x: &QuadVal| (lf / x.to_f64()).floor().max(0.0) as u64 + 1;
    let (pa, pb, ph, pr) = (bound(t.a()), bound(t.b()), bound(t.h()), bound(&QuadVal::one()));
    let mut out = Vec::new();
    for p in 0..=pa {
        for q in 0..=pb {
            for r in 0..=pr {
                for s in 0..=ph {
                    let c = CoverSolution::new(p, q, r, s);
                    if &c.length(t) == l {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

pub fn data(name: &str) -> Tiling {
    let path = format!("{}/tests/data/{}", env!("CARGO_MANIFEST_DIR"), name);
    parse_tiling(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Samples exact dyadic points in the region's bounding box. Points strictly
/// inside the region and on no tile boundary must lie inside exactly one
/// tile; boundary hits are skipped and resampled.
pub fn monte_carlo(t: &Tiling, samples: usize, seed: u64) {
    let polys = t.polygons().unwrap();
    let (lo, hi) = t.region.bbox();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w, h) = (&hi.x - &lo.x, &hi.y - &lo.y);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < samples {
        attempts += 1;
        assert!(attempts < 20 * samples, "too many boundary hits");
        let fx = QuadVal::frac(rng.gen_range(0..1 << 20), 1 << 20);
        let fy = QuadVal::frac(rng.gen_range(0..1 << 20), 1 << 20);
        let p = Point2::new(&lo.x + &(&w * &fx), &lo.y + &(&h * &fy));
        match t.region.locate(&p) {
            Location::Outside => {
                // nothing outside the region may be covered
                assert!(polys.iter().all(|q| q.locate(&p) == Location::Outside));
                checked += 1;
            }
            Location::Boundary => {}
            Location::Inside => {
                let locs: Vec<Location> = polys.iter().map(|q| q.locate(&p)).collect();
                if locs.contains(&Location::Boundary) {
                    continue;
                }
                assert_eq!(
                    locs.iter().filter(|&&l| l == Location::Inside).count(),
                    1,
                    "point {}",
                    p
                );
                checked += 1;
            }
        }
    }
}
