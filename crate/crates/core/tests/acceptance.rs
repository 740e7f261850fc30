//! Acceptance run: one PASS/FAIL line per criterion. All comparisons are
//! exact (tolerance 0); the only pinned tolerances are wall-clock limits.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{approx_sign, brute_cover, data, monte_carlo};
use reptile_core::angles::{angle_fill_arrangements, deg2_angle_list, FillArrangement, FillPart, FillTarget};
use reptile_core::exactfield::qx_decompose;
use reptile_core::filters::{
    cii_check, cover_solutions, enumerate_right, mtm_certificate, reptile_refuted, ssts_certificate, CoverQuery,
    CoverSolution, EnumerateGrid, FilterOptions,
};
use reptile_core::search::{
    refute_small_n, scale_factor, search_rep, OrientationSet, SearchOptions, SearchStatus, SmallNVerdict,
};
use reptile_core::tiling::{substitute, verify_tiling};
use reptile_core::{AnglePi, QuadVal, Rat, TrapezoidSpec};

const EXACT_TOLERANCE: u32 = 0;

type Outcome = Result<String, String>;

fn t(s: &str) -> TrapezoidSpec {
    s.parse().unwrap()
}

fn q(s: &str) -> QuadVal {
    s.parse().unwrap()
}

fn pi(p: i64, q: i64) -> AnglePi {
    AnglePi::new(p, q).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn serial() -> SearchOptions {
    SearchOptions {
        parallel_width: 1,
        ..SearchOptions::default()
    }
}

fn rr_reproduction() -> Outcome {
    let grid = EnumerateGrid {
        qmax: 60,
        denmax: 16,
        amax: Rat::from_int(2),
    };
    let report = enumerate_right(&grid, &FilterOptions::default()).map_err(|e| e.to_string())?;
    let got: BTreeSet<(AnglePi, QuadVal)> = report.survivors.iter().cloned().collect();
    let want: BTreeSet<(AnglePi, QuadVal)> = [
        (pi(1, 4), q("1/2*sqrt(2)")),
        (pi(1, 3), q("1")),
        (pi(1, 3), q("1/2")),
        (pi(1, 3), q("1/4")),
        (pi(1, 3), q("1/6")),
        (pi(1, 3), q("1/8")),
    ]
    .into_iter()
    .collect();
    ensure(got == want && report.survivors.len() == 6, || {
        format!("survivors {:?}", report.survivors)
    })?;
    Ok(format!(
        "{} candidates scanned, survivors exactly the six pairs",
        report.candidates_scanned
    ))
}

fn angle_filters() -> Outcome {
    let got: BTreeSet<AnglePi> = deg2_angle_list(120).into_iter().collect();
    let want: BTreeSet<AnglePi> = [pi(1, 6), pi(1, 5), pi(1, 4), pi(1, 3), pi(2, 5)].into_iter().collect();
    ensure(got == want, || format!("deg2 list {:?}", got))?;
    let mut cii = BTreeSet::new();
    for den in 2..=120 {
        for num in 1..den {
            if let Ok(a) = AnglePi::new(num, den) {
                if a.is_acute() && cii_check(a) {
                    cii.insert(a);
                }
            }
        }
    }
    ensure(cii == [pi(1, 3)].into_iter().collect(), || {
        format!("cii survivors {:?}", cii)
    })?;
    Ok("deg-2 angles {π/6, π/5, π/4, π/3, 2π/5}; cii survivors {π/3}".into())
}

fn small_n() -> Outcome {
    let r = t("right(theta=1/3*pi, a=1/8)");
    let admitted: Vec<u32> = (2..25).filter(|&n| scale_factor(n, 3).is_some()).collect();
    ensure(admitted == [3, 4, 9, 12, 16], || format!("admitted {:?}", admitted))?;
    let mut rules = Vec::new();
    for n in [3, 9, 12, 16] {
        match refute_small_n(&r, n).map_err(|e| e.to_string())? {
            SmallNVerdict::Refuted(why) => rules.push(format!("n={}: {}", n, why.split(':').next().unwrap_or(""))),
            SmallNVerdict::Inconclusive => return Err(format!("n={} not refuted", n)),
        }
    }
    for n in [4, 3] {
        let out = search_rep(&r, n, &serial()).map_err(|e| e.to_string())?;
        ensure(out.status == SearchStatus::ExhaustedNone, || {
            format!("search n={}: {}", n, out.summary())
        })?;
        rules.push(format!("search n={} exhausted in {} nodes", n, out.nodes));
    }
    Ok(rules.join("; "))
}

fn rep25() -> Outcome {
    let tiling = data("rep25_right_pi3_eighth.tiling");
    verify_tiling(&tiling).map_err(|v| format!("{} violations, first: {}", v.len(), v[0]))?;
    ensure(tiling.tiles.len() == 25, || "tile count".into())?;
    let area = tiling
        .polygons()
        .map_err(|e| e.to_string())?
        .iter()
        .fold(QuadVal::zero(), |acc, p| acc + p.area());
    let want = q("75/16*sqrt(3)");
    ensure(area == want && tiling.region.area() == want, || {
        format!("area {}", area)
    })?;
    let axis = search_rep(
        &tiling.base,
        25,
        &SearchOptions {
            orientation_set: OrientationSet::AxisAligned,
            ..serial()
        },
    )
    .map_err(|e| e.to_string())?;
    let full = search_rep(&tiling.base, 25, &serial()).map_err(|e| e.to_string())?;
    ensure(full.status == SearchStatus::Found, || {
        format!("full-group search: {}", full.summary())
    })?;
    let same = full.tiling.as_ref() == Some(&tiling);
    Ok(format!(
        "stored layout verifies, area 75/16·√3; axis-aligned search {} ({} nodes), full-group search found it in {} nodes{}",
        axis.status,
        axis.nodes,
        full.nodes,
        if same { ", identical to the stored file" } else { "" }
    ))
}

fn known_reptiles() -> Outcome {
    let mut notes = Vec::new();
    for s in ["iso(theta=1/3*pi, a=1)", "right(theta=1/3*pi, a=1/2)"] {
        let out = search_rep(&t(s), 4, &serial()).map_err(|e| e.to_string())?;
        let tiling = out.tiling.ok_or_else(|| format!("{}: {}", s, out.status))?;
        let sixteen = substitute(&tiling).map_err(|e| e.to_string())?;
        ensure(sixteen.tiles.len() == 16 && verify_tiling(&sixteen).is_ok(), || {
            format!("{}: rep-16 fails", s)
        })?;
        notes.push(format!("{} rep-4 in {} nodes, rep-16 verifies", s, out.nodes));
    }
    Ok(notes.join("; "))
}

fn certificates() -> Outcome {
    let opts = FilterOptions::default();
    let r = t("right(theta=1/3*pi, a=1/8)");
    let mtm = mtm_certificate(&r, opts.rho_max).map_err(|e| e.to_string())?;
    ensure(mtm.witness() == Some(CoverSolution::new(3, 1, 0, 0)), || {
        format!("mtm {:?}", mtm)
    })?;
    let ssts = ssts_certificate(&r).map_err(|e| e.to_string())?;
    ensure(ssts.is_certified(), || format!("ssts {:?}", ssts))?;
    let verdict = reptile_refuted(&r, &opts).map_err(|e| e.to_string())?;
    ensure(verdict.is_none(), || format!("R(π/3,1/8) refuted by {:?}", verdict))?;
    let other = reptile_refuted(&t("right(theta=1/3*pi, a=1/4*sqrt(3))"), &opts).map_err(|e| e.to_string())?;
    let filter = other.map(|e| e.filter).unwrap_or_default();
    ensure(filter == "mtm+ssts", || format!("R(π/3,√3/4) refuted by `{}`", filter))?;
    Ok("mtm uncertified (3,1,0,0); ssts certified; R(π/3,1/8) survives; R(π/3,√3/4) refuted by mtm+ssts".into())
}

fn random_quad(rng: &mut ChaCha8Rng, d: u64) -> QuadVal {
    let mut r = || {
        let n = if rng.gen_bool(0.2) {
            rng.gen::<i32>() as i64
        } else {
            rng.gen_range(-60..60)
        };
        Rat::new(n, rng.gen_range(1..40))
    };
    QuadVal::new(r(), r(), d).unwrap()
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut discrepancies = 0u32;
    for _ in 0..100_000 {
        let d = [2, 3, 5, 6, 7][rng.gen_range(0..5)];
        let (x, y, z) = (
            random_quad(&mut rng, d),
            random_quad(&mut rng, d),
            random_quad(&mut rng, d),
        );
        let ok = &x + &y == &y + &x
            && &x * &y == &y * &x
            && &(&x + &y) + &z == &x + &(&y + &z)
            && &(&x * &y) * &z == &x * &(&y * &z)
            && &x * &(&y + &z) == &(&x * &y) + &(&x * &z)
            && (x.is_zero() || &(&y / &x) * &x == y)
            && approx_sign(&x).is_none_or(|s| s == x.signum());
        let decomposed = if !y.v().is_zero() {
            qx_decompose(&x, &y).map(|c| c.recombine(&y) == x).unwrap_or(false)
        } else {
            true
        };
        discrepancies += u32::from(!ok || !decomposed);
    }
    const TILES: [&str; 5] = [
        "right(theta=1/3*pi, a=1/8)",
        "right(theta=1/4*pi, a=1/2*sqrt(2))",
        "iso(theta=1/3*pi, a=1)",
        "right(theta=acos(3/5), a=1)",
        "gen(theta=1/6*pi, psi=1/3*pi, a=2-1/3*sqrt(3))",
    ];
    for i in 0..50 {
        let tile = t(TILES[i % TILES.len()]);
        let mut l = CoverSolution::new(
            rng.gen_range(0..4),
            rng.gen_range(0..3),
            rng.gen_range(0..3),
            rng.gen_range(0..4),
        )
        .length(&tile);
        if i % 3 == 2 || !l.is_positive() {
            l = &l + &QuadVal::frac(rng.gen_range(1..4), 7);
        }
        let mut got = cover_solutions(&CoverQuery::new(&tile, l.clone())).map_err(|e| e.to_string())?;
        let mut want = brute_cover(&tile, &l);
        got.sort_by_key(|c| (c.p, c.q, c.r, c.s));
        want.sort_by_key(|c| (c.p, c.q, c.r, c.s));
        discrepancies += u32::from(got != want);
    }
    let mut tilings = vec![
        data("rep25_right_pi3_eighth.tiling"),
        data("rep4_half_hexagon.tiling"),
        data("rep4_right_pi3_half.tiling"),
    ];
    tilings.push(substitute(&tilings[1]).map_err(|e| e.to_string())?);
    tilings.push(substitute(&tilings[2]).map_err(|e| e.to_string())?);
    for (i, tiling) in tilings.iter().enumerate() {
        verify_tiling(tiling).map_err(|v| v[0].to_string())?;
        monte_carlo(tiling, 10_000, 100 + i as u64);
    }
    ensure(discrepancies == EXACT_TOLERANCE, || {
        format!("{} discrepancies", discrepancies)
    })?;
    Ok(format!(
        "10^5 field-law cases, decompose round trips, 50 cover instances, 10^4 samples on each of {} tilings: 0 discrepancies",
        tilings.len()
    ))
}

fn dissections() -> Outcome {
    use FillPart::*;
    let got: BTreeSet<FillArrangement> =
        angle_fill_arrangements(&FillTarget::full_turn(), &t("right(theta=acos(3/5), a=1)"), false)
            .into_iter()
            .collect();
    let want: BTreeSet<FillArrangement> = [
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
    ensure(got == want, || format!("got {:?}", got))?;
    let listed: Vec<String> = got.iter().map(|a| a.to_string()).collect();
    Ok(format!("6 arrangements: {}", listed.join(", ")))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("right-trapezoid candidates", Duration::from_secs(60), rr_reproduction),
        ("angle filters", Duration::from_secs(10), angle_filters),
        ("no rep-n for 1 < n < 25", Duration::from_secs(600), small_n),
        ("rep-25 layout", Duration::from_secs(3600), rep25),
        ("known reptiles", Duration::from_secs(300), known_reptiles),
        ("certificates", Duration::from_secs(1), certificates),
        ("property suites", Duration::from_secs(1800), property_suites),
        ("full-turn arrangements", Duration::from_secs(1), dissections),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = result.and_then(|s| {
            if took <= *limit {
                Ok(s)
            } else {
                Err(format!("took {:.2?}, limit {:?}", took, limit))
            }
        });
        match result {
            Ok(detail) => println!("PASS {} {} [{:.2?} / {:?}]: {}", i + 1, name, took, limit, detail),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {} [{:.2?} / {:?}]: {}", i + 1, name, took, limit, why);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
