mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{approx_sign, brute_cover, data, monte_carlo};
use reptile_core::exactfield::qx_decompose;
use reptile_core::filters::{cover_solutions, CoverQuery, CoverSolution};
use reptile_core::geometry::{Location, Point2};
use reptile_core::tiling::{substitute, verify_tiling};
use reptile_core::{QuadVal, Rat, TrapezoidSpec};

const RADICANDS: [u64; 5] = [2, 3, 5, 6, 7];

fn rat() -> impl Strategy<Value = Rat> {
    let num = prop_oneof![4 => -60i64..60, 1 => any::<i32>().prop_map(i64::from)];
    (num, 1i64..40).prop_map(|(n, d)| Rat::new(n, d))
}

fn in_field(d: u64) -> impl Strategy<Value = QuadVal> {
    (rat(), rat()).prop_map(move |(u, v)| QuadVal::new(u, v, d).unwrap())
}

fn triple() -> impl Strategy<Value = (QuadVal, QuadVal, QuadVal)> {
    prop::sample::select(RADICANDS.to_vec()).prop_flat_map(|d| (in_field(d), in_field(d), in_field(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100_000))]

    #[test]
    fn field_laws((x, y, z) in triple()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert_eq!(&(&y / &x) * &x, y.clone());
        }
        prop_assert_eq!((&x * &y).signum(), x.signum() * y.signum());
        if x < y {
            prop_assert!(&x + &z < &y + &z);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20_000))]

    #[test]
    fn sign_matches_high_precision((x, _, _) in triple()) {
        if let Some(s) = approx_sign(&x) {
            prop_assert_eq!(x.signum(), s);
        }
    }

    #[test]
    fn near_cancellation_sign(d in prop::sample::select(RADICANDS.to_vec()), k in 1i64..2000) {
        // u/v close to √d from above and below
        let s = ((d as i64 * k * k) as f64).sqrt().floor() as i64;
        for u in [s, s + 1] {
            let x = QuadVal::new(Rat::from(u), Rat::from(-k), d).unwrap();
            let want = (u * u - (d as i64) * k * k).signum() as i32;
            prop_assert_eq!(x.signum(), want);
        }
    }

    #[test]
    fn decompose_round_trip(d in prop::sample::select(RADICANDS.to_vec()), c1 in rat(), cx in rat(), hu in rat(), hv in rat()) {
        prop_assume!(!hv.is_zero());
        let h = QuadVal::new(hu, hv, d).unwrap();
        let y = &QuadVal::rational(c1.clone()) + &(&QuadVal::rational(cx.clone()) * &h);
        let got = qx_decompose(&y, &h).unwrap();
        prop_assert_eq!(&got.c1, &c1);
        prop_assert_eq!(&got.cx, &cx);
        prop_assert_eq!(got.recombine(&h), y);
    }
}

const TILES: [&str; 10] = [
    "right(theta=1/3*pi, a=1/8)",
    "right(theta=1/3*pi, a=1/2)",
    "right(theta=1/3*pi, a=1)",
    "right(theta=1/4*pi, a=1/2*sqrt(2))",
    "right(theta=1/6*pi, a=1/3)",
    "right(theta=1/3*pi, a=1/4*sqrt(3))",
    "iso(theta=1/3*pi, a=1)",
    "right(theta=acos(3/5), a=1)",
    "right(theta=1/4*pi, a=3/2)",
    "gen(theta=1/6*pi, psi=1/3*pi, a=2-1/3*sqrt(3))",
];

#[test]
fn cover_solutions_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for round in 0..50 {
        let t: TrapezoidSpec = TILES[round % TILES.len()].parse().unwrap();
        let mut l = CoverSolution::new(
            rng.gen_range(0..4),
            rng.gen_range(0..3),
            rng.gen_range(0..3),
            rng.gen_range(0..4),
        )
        .length(&t);
        if round % 3 == 2 {
            l = &l + &QuadVal::frac(rng.gen_range(1..4), 7);
        }
        if !l.is_positive() {
            l = &l + &QuadVal::one();
        }
        let mut got = cover_solutions(&CoverQuery::new(&t, l.clone())).unwrap();
        let mut want = brute_cover(&t, &l);
        got.sort_by_key(|c| (c.p, c.q, c.r, c.s));
        want.sort_by_key(|c| (c.p, c.q, c.r, c.s));
        assert_eq!(got, want, "{} L={}", t, l);
    }
}

#[test]
fn verified_tilings_pass_point_sampling() {
    let mut tilings = vec![
        data("rep25_right_pi3_eighth.tiling"),
        data("rep4_half_hexagon.tiling"),
        data("rep4_right_pi3_half.tiling"),
    ];
    tilings.push(substitute(&tilings[1]).unwrap());
    tilings.push(substitute(&tilings[2]).unwrap());
    for (i, t) in tilings.iter().enumerate() {
        assert_eq!(verify_tiling(t), Ok(()));
        monte_carlo(t, 10_000, i as u64);
    }
}

#[test]
fn sampling_detects_a_gap() {
    let mut t = data("rep4_half_hexagon.tiling");
    t.tiles.pop();
    let polys = t.polygons().unwrap();
    let (lo, hi) = t.region.bbox();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let uncovered = (0..2000).any(|_| {
        let fx = QuadVal::frac(rng.gen_range(0..1 << 20), 1 << 20);
        let fy = QuadVal::frac(rng.gen_range(0..1 << 20), 1 << 20);
        let p = Point2::new(&lo.x + &(&(&hi.x - &lo.x) * &fx), &lo.y + &(&(&hi.y - &lo.y) * &fy));
        t.region.locate(&p) == Location::Inside && polys.iter().all(|q| q.locate(&p) == Location::Outside)
    });
    assert!(uncovered);
    assert!(verify_tiling(&t).is_err());
}
