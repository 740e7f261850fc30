//! Exhaustive backtracking search for rep-n tilings, and exact refutation
//! rules for small `n`.
//!
//! The search always branches on the lowest, then leftmost, corner `P` of
//! the uncovered region. Every tiling has to cover the sector of `P` that
//! starts at the smallest uncovered direction, and the tile doing so must
//! have a vertex at `P` with an edge along that direction (otherwise `P`
//! would not be lowest-leftmost). Branching on all such placements is
//! therefore exhaustive, and exhausting the root proves that no tiling
//! exists with the chosen orientation set.
//!
//! All edge directions are multiples of the base angle `g = π/m`, so the
//! neighbourhood of a point is tracked as a bitmask over the `2m` open
//! wedges between consecutive multiples of `g`.

mod small;

pub use small::{refute_small_n, SmallNVerdict};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_integer::Roots;
use rayon::prelude::*;
use thiserror::Error;

use crate::angles::{angle_fill_arrangements, FillTarget};
use crate::exactfield::{QuadVal, Rat};
use crate::filters::{cover_solutions, CoverQuery};
use crate::geometry::{orient2d, Point2};
use crate::tiling::{
    convex_interiors_disjoint, tile_polygon, verify_tiling, OrientationGroup, PlacedTile, Tiling, TilingError,
};
use crate::trapezoid::TrapezoidSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("n = {n} is not admissible: √{n} is not in Q(√{d})")]
    NotAdmissible { n: u32, d: u64 },
    #[error("search needs θ/π and ψ/π rational")]
    IrrationalAngle,
    #[error("orientation group of order {0} is too large")]
    GroupTooLarge(i64),
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error("internal error: {0}")]
    Internal(String),
}

/// `√n` when it lies in `Q(√d)`, i.e. `n = k²` or `n = k²·d`.
pub fn scale_factor(n: u32, d: u64) -> Option<QuadVal> {
    if n == 0 {
        return None;
    }
    let k = (n as u64).sqrt();
    if k * k == n as u64 {
        return Some(QuadVal::int(k as i64));
    }
    if d > 1 && (n as u64).is_multiple_of(d) {
        let r = n as u64 / d;
        let k = r.sqrt();
        if k * k == r {
            return Some(QuadVal::surd(k as i64, 1, d));
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrientationSet {
    /// Every rotation by a multiple of the base angle, with reflections.
    #[default]
    FullGroup,
    /// Rotations by 0 and π only, with reflections.
    AxisAligned,
}

impl fmt::Display for OrientationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrientationSet::FullGroup => "full-group",
            OrientationSet::AxisAligned => "axis-aligned",
        })
    }
}

impl std::str::FromStr for OrientationSet {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "full-group" | "full" => Ok(OrientationSet::FullGroup),
            "axis-aligned" | "axis-aligned-only" | "axis" => Ok(OrientationSet::AxisAligned),
            _ => Err(format!("unknown orientation set `{}`", s)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub orientation_set: OrientationSet,
    pub node_budget: u64,
    pub time_budget: Duration,
    pub use_cover_pruning: bool,
    pub use_angle_pruning: bool,
    /// Worker threads; 1 gives a fully deterministic run.
    pub parallel_width: usize,
    /// Proof-log lines kept; prune counts are always complete.
    pub log_limit: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            orientation_set: OrientationSet::FullGroup,
            node_budget: 50_000_000,
            time_budget: Duration::from_secs(600),
            use_cover_pruning: true,
            use_angle_pruning: true,
            parallel_width: std::thread::available_parallelism().map_or(1, |n| n.get()),
            log_limit: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Found,
    ExhaustedNone,
    BudgetExceeded,
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStatus::Found => "found",
            SearchStatus::ExhaustedNone => "exhausted-none",
            SearchStatus::BudgetExceeded => "budget-exceeded",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PruneCounts {
    pub angle: u64,
    pub cover: u64,
    pub area: u64,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub tiling: Option<Tiling>,
    pub nodes: u64,
    pub prunes: PruneCounts,
    pub proof_log: Vec<String>,
    pub orientation_set: OrientationSet,
}

impl SearchOutcome {
    pub fn summary(&self) -> String {
        format!(
            "status={} nodes={} orientations={} prunes: angle={} cover={} area={}",
            self.status, self.nodes, self.orientation_set, self.prunes.angle, self.prunes.cover, self.prunes.area
        )
    }
}

/// One orientation of the tile, anchored at the origin.
#[derive(Debug, Clone)]
struct Pose {
    k: i64,
    reflected: bool,
    verts: [Point2; 4],
    /// Direction index of the edge leaving vertex `i`.
    out_dir: [u32; 4],
    /// Interior angle at vertex `i`, in wedges.
    ang: [u32; 4],
}

#[derive(Debug, Clone)]
struct Placed {
    pose: usize,
    t: Point2,
    verts: [Point2; 4],
    lo: Point2,
    hi: Point2,
}

fn bbox4(v: &[Point2; 4]) -> (Point2, Point2) {
    let mut lo = v[0].clone();
    let mut hi = v[0].clone();
    for p in &v[1..] {
        if p.x < lo.x {
            lo.x = p.x.clone();
        }
        if p.y < lo.y {
            lo.y = p.y.clone();
        }
        if p.x > hi.x {
            hi.x = p.x.clone();
        }
        if p.y > hi.y {
            hi.y = p.y.clone();
        }
    }
    (lo, hi)
}

struct Ctx {
    base: TrapezoidSpec,
    n: u32,
    m: u32,
    full: u64,
    poses: Vec<Pose>,
    /// Region as a placed shape in the identity pose.
    region: Placed,
    region_pose: Pose,
    units: Vec<Point2>,
    fill_ok: Vec<bool>,
    opts: SearchOptions,
    start: Instant,
    nodes: AtomicU64,
    found: AtomicBool,
    over_budget: AtomicBool,
    prunes: [AtomicU64; 3],
    log: Mutex<Vec<String>>,
}

enum Flow {
    Found,
    Exhausted,
    Abort,
}

impl Ctx {
    fn wedges(&self, start: u32, len: u32) -> u64 {
        let m2 = 2 * self.m;
        (0..len).fold(0, |acc, i| acc | 1 << ((start + i) % m2))
    }

    fn wedge_blocked(&self, mask: u64, j: i64) -> bool {
        mask & (1 << j.rem_euclid(2 * self.m as i64)) != 0
    }

    /// Wedges around `v` occupied by the closed convex quad.
    fn quad_mask(&self, pose: &Pose, q: &Placed, v: &Point2) -> u64 {
        if v.x < q.lo.x || v.x > q.hi.x || v.y < q.lo.y || v.y > q.hi.y {
            return 0;
        }
        if let Some(i) = q.verts.iter().position(|w| w == v) {
            return self.wedges(pose.out_dir[i], pose.ang[i]);
        }
        let mut on = None;
        for i in 0..4 {
            match orient2d(&q.verts[i], &q.verts[(i + 1) % 4], v) {
                o if o < 0 => return 0,
                0 => on = Some(i),
                _ => {}
            }
        }
        match on {
            Some(i) => self.wedges(pose.out_dir[i], self.m),
            None => self.full,
        }
    }

    fn coverage(&self, placed: &[Placed], v: &Point2) -> u64 {
        let mut mask = self.full & !self.quad_mask(&self.region_pose, &self.region, v);
        for p in placed {
            if mask == self.full {
                break;
            }
            mask |= self.quad_mask(&self.poses[p.pose], p, v);
        }
        mask
    }

    fn points<'a>(&'a self, placed: &'a [Placed]) -> impl Iterator<Item = &'a Point2> {
        self.region
            .verts
            .iter()
            .chain(placed.iter().flat_map(|p| p.verts.iter()))
    }

    /// Lowest-then-leftmost point with an uncovered wedge, at or after
    /// `from` (everything before it is already covered).
    fn frontier(&self, placed: &[Placed], from: &Point2) -> Option<(Point2, u64)> {
        let mut cand: Vec<&Point2> = self
            .points(placed)
            .filter(|p| p.cmp_yx(from) != std::cmp::Ordering::Less)
            .collect();
        cand.sort_by(|a, b| a.cmp_yx(b));
        cand.dedup();
        for p in cand {
            let mask = self.coverage(placed, p);
            if mask != self.full {
                return Some((p.clone(), mask));
            }
        }
        None
    }

    /// Length of the boundary run of the uncovered region leaving `p` along
    /// direction `j`, when the tiles along it must end exactly at its far
    /// end. `left` says the uncovered side is counterclockwise of the ray.
    fn constrained_run(&self, placed: &[Placed], p: &Point2, j: u32, left: bool) -> Option<QuadVal> {
        let u = &self.units[j as usize];
        let mut on_ray: Vec<(QuadVal, &Point2)> = self
            .points(placed)
            .filter_map(|q| {
                let d = q - p;
                (d.cross(u).is_zero() && d.dot(u).is_positive()).then(|| (d.dot(u), q))
            })
            .collect();
        on_ray.sort_by(|a, b| a.0.cmp(&b.0));
        on_ray.dedup_by(|a, b| a.0 == b.0);
        let (open, closed) = if left {
            (j as i64, j as i64 - 1)
        } else {
            (j as i64 - 1, j as i64)
        };
        for (dist, q) in on_ray {
            let mask = self.coverage(placed, q);
            let open_blocked = self.wedge_blocked(mask, open);
            if !open_blocked && self.wedge_blocked(mask, closed) {
                continue;
            }
            return open_blocked.then_some(dist);
        }
        None
    }

    fn cover_feasible(&self, memo: &mut BTreeMap<QuadVal, bool>, l: &QuadVal) -> bool {
        if let Some(&b) = memo.get(l) {
            return b;
        }
        let ok = cover_solutions(&CoverQuery::new(&self.base, l.clone())).map_or(true, |s| !s.is_empty());
        memo.insert(l.clone(), ok);
        ok
    }

    fn prune(&self, rule: usize, id: u64, detail: impl FnOnce() -> String) {
        self.prunes[rule].fetch_add(1, Ordering::Relaxed);
        let mut log = self.log.lock().expect("log lock");
        if log.len() < self.opts.log_limit {
            let name = ["angle", "cover", "area"][rule];
            log.push(format!("node={} rule={} detail={}", id, name, detail()));
        }
    }

    fn budget_hit(&self, id: u64) -> bool {
        if id >= self.opts.node_budget || self.start.elapsed() > self.opts.time_budget {
            self.over_budget.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    /// Placements covering the first uncovered wedge at `p`, in a fixed order.
    fn children(&self, placed: &[Placed], p: &Point2, mask: u64, id: u64) -> Vec<Placed> {
        let m2 = 2 * self.m;
        let j0 = (0..m2)
            .find(|&j| mask & (1 << j) == 0)
            .expect("frontier has a free wedge");
        let w = (j0..m2).take_while(|&j| mask & (1 << j) == 0).count() as u32;
        let mut out = Vec::new();
        for (pi, pose) in self.poses.iter().enumerate() {
            for i in 0..4 {
                if pose.out_dir[i] != j0 || pose.ang[i] > w {
                    continue;
                }
                if self.opts.use_angle_pruning && !self.fill_ok[(w - pose.ang[i]) as usize] {
                    self.prune(0, id, || {
                        format!(
                            "pose k={} refl={} vertex {} leaves {}/{}·π unfillable at {}",
                            pose.k,
                            u8::from(pose.reflected),
                            i,
                            w - pose.ang[i],
                            self.m,
                            p
                        )
                    });
                    continue;
                }
                let t = p - &pose.verts[i];
                let verts: [Point2; 4] = std::array::from_fn(|k| &pose.verts[k] + &t);
                if verts
                    .iter()
                    .any(|v| self.quad_mask(&self.region_pose, &self.region, v) == 0)
                {
                    continue;
                }
                let (lo, hi) = bbox4(&verts);
                let cand = Placed {
                    pose: pi,
                    t,
                    verts,
                    lo,
                    hi,
                };
                if placed.iter().all(|q| disjoint(&cand, q)) {
                    out.push(cand);
                }
            }
        }
        out
    }

    fn node(
        &self,
        placed: &[Placed],
        from: &Point2,
        memo: &mut BTreeMap<QuadVal, bool>,
    ) -> Result<Option<(Point2, Vec<Placed>)>, Flow> {
        let id = self.nodes.fetch_add(1, Ordering::Relaxed);
        if self.found.load(Ordering::Relaxed) || self.budget_hit(id) {
            return Err(Flow::Abort);
        }
        if placed.len() == self.n as usize {
            // interiors are disjoint and inside the region, and the areas add up
            return Err(Flow::Found);
        }
        let Some((p, mask)) = self.frontier(placed, from) else {
            self.prune(2, id, || format!("{} tiles leave no uncovered corner", placed.len()));
            return Err(Flow::Exhausted);
        };
        let m2 = 2 * self.m;
        let j0 = (0..m2).find(|&j| mask & (1 << j) == 0).expect("free wedge");
        let w = (j0..m2).take_while(|&j| mask & (1 << j) == 0).count() as u32;
        if self.opts.use_angle_pruning && !self.fill_ok[w as usize] {
            self.prune(0, id, || format!("gap {}/{}·π at {} cannot be filled", w, self.m, p));
            return Err(Flow::Exhausted);
        }
        if self.opts.use_cover_pruning {
            for (j, left) in [(j0, true), ((j0 + w) % m2, false)] {
                if let Some(l) = self.constrained_run(placed, &p, j, left) {
                    if !self.cover_feasible(memo, &l) {
                        self.prune(1, id, || format!("run of length {} from {} has no edge cover", l, p));
                        return Err(Flow::Exhausted);
                    }
                }
            }
        }
        Ok(Some((p.clone(), self.children(placed, &p, mask, id))))
    }

    fn dfs(&self, placed: &mut Vec<Placed>, from: &Point2, memo: &mut BTreeMap<QuadVal, bool>) -> Flow {
        let (p, kids) = match self.node(placed, from, memo) {
            Err(f) => return f,
            Ok(x) => x.expect("node result"),
        };
        for c in kids {
            placed.push(c);
            match self.dfs(placed, &p, memo) {
                Flow::Exhausted => {}
                f => return f,
            }
            placed.pop();
        }
        Flow::Exhausted
    }
}

fn disjoint(a: &Placed, b: &Placed) -> bool {
    if a.hi.x <= b.lo.x || b.hi.x <= a.lo.x || a.hi.y <= b.lo.y || b.hi.y <= a.lo.y {
        return true;
    }
    let pa = crate::geometry::Polygon::from_vertices_unchecked(a.verts.to_vec());
    let pb = crate::geometry::Polygon::from_vertices_unchecked(b.verts.to_vec());
    convex_interiors_disjoint(&pa, &pb)
}

fn direction_index(units: &[Point2], e: &Point2) -> Option<u32> {
    units
        .iter()
        .position(|u| e.cross(u).is_zero() && e.dot(u).is_positive())
        .map(|j| j as u32)
}

fn make_pose(
    base: &TrapezoidSpec,
    g: &OrientationGroup,
    units: &[Point2],
    k: i64,
    reflected: bool,
) -> Result<Pose, SearchError> {
    let poly = tile_polygon(
        base,
        g,
        &PlacedTile {
            k,
            reflected,
            translate: Point2::origin(),
        },
    );
    let verts: [Point2; 4] = std::array::from_fn(|i| poly.vertex(i).clone());
    let m2 = units.len() as u32;
    let mut out_dir = [0u32; 4];
    for i in 0..4 {
        out_dir[i] = direction_index(units, &(&verts[(i + 1) % 4] - &verts[i]))
            .ok_or_else(|| SearchError::Internal("edge direction is not a multiple of the base angle".into()))?;
    }
    let ang = std::array::from_fn(|i| {
        let back = (out_dir[(i + 3) % 4] + m2 / 2) % m2;
        (back + m2 - out_dir[i]) % m2
    });
    Ok(Pose {
        k,
        reflected,
        verts,
        out_dir,
        ang,
    })
}

/// Searches for a dissection of `√n·T` into `n` copies of `T`.
pub fn search_rep(t: &TrapezoidSpec, n: u32, opts: &SearchOptions) -> Result<SearchOutcome, SearchError> {
    let d = t.radicand();
    let scale = scale_factor(n, d).ok_or(SearchError::NotAdmissible { n, d })?;
    if t.theta().rational_tag().is_none() || t.psi().rational_tag().is_none() {
        return Err(SearchError::IrrationalAngle);
    }
    let g = OrientationGroup::for_tile(t)?;
    if g.order() > 64 {
        return Err(SearchError::GroupTooLarge(g.order()));
    }
    let m = (g.order() / 2) as u32;
    let units: Vec<Point2> = (0..g.order())
        .map(|j| {
            let (c, s) = g.cos_sin(j);
            Point2::new(c.clone(), s.clone())
        })
        .collect();
    let ks: Vec<i64> = match opts.orientation_set {
        OrientationSet::FullGroup => (0..g.order()).collect(),
        OrientationSet::AxisAligned => vec![0, m as i64],
    };
    let mut poses = Vec::new();
    for &k in &ks {
        for reflected in [false, true] {
            poses.push(make_pose(t, &g, &units, k, reflected)?);
        }
    }
    let region_pose = make_pose(t, &g, &units, 0, false)?;
    let region_verts: [Point2; 4] = std::array::from_fn(|i| region_pose.verts[i].scale(&scale));
    let (lo, hi) = bbox4(&region_verts);
    let region = Placed {
        pose: 0,
        t: Point2::origin(),
        verts: region_verts,
        lo,
        hi,
    };
    let fill_ok = (0..=2 * m)
        .map(|w| {
            w == 0
                || !angle_fill_arrangements(
                    &FillTarget {
                        pi: Rat::new(w as i64, m as i64),
                        theta: 0,
                    },
                    t,
                    true,
                )
                .is_empty()
        })
        .collect();
    let ctx = Ctx {
        base: t.clone(),
        n,
        m,
        full: if 2 * m == 64 { u64::MAX } else { (1u64 << (2 * m)) - 1 },
        poses,
        region,
        region_pose,
        units,
        fill_ok,
        opts: opts.clone(),
        start: Instant::now(),
        nodes: AtomicU64::new(0),
        found: AtomicBool::new(false),
        over_budget: AtomicBool::new(false),
        prunes: Default::default(),
        log: Mutex::new(Vec::new()),
    };

    let start_point = ctx.region.verts[0].clone();
    let mut memo = BTreeMap::new();
    let root = Vec::new();
    let solution: Option<Vec<Placed>> = match ctx.node(&root, &start_point, &mut memo) {
        Err(Flow::Found) => Some(root),
        Err(_) => None,
        Ok(x) => {
            let (p, kids) = x.expect("root node");
            let run = |c: Placed| {
                let mut placed = vec![c];
                let mut memo = BTreeMap::new();
                match ctx.dfs(&mut placed, &p, &mut memo) {
                    Flow::Found => {
                        ctx.found.store(true, Ordering::Relaxed);
                        Some(placed)
                    }
                    _ => None,
                }
            };
            if opts.parallel_width <= 1 {
                kids.into_iter().find_map(run)
            } else {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(opts.parallel_width)
                    .build()
                    .map_err(|e| SearchError::Internal(e.to_string()))?;
                pool.install(|| kids.into_par_iter().map(run).collect::<Vec<_>>())
                    .into_iter()
                    .flatten()
                    .next()
            }
        }
    };

    let status = if solution.is_some() {
        SearchStatus::Found
    } else if ctx.over_budget.load(Ordering::Relaxed) {
        SearchStatus::BudgetExceeded
    } else {
        SearchStatus::ExhaustedNone
    };
    let tiling = match solution {
        Some(placed) => {
            let tiles = placed
                .iter()
                .map(|p| {
                    let pose = &ctx.poses[p.pose];
                    PlacedTile {
                        k: pose.k,
                        reflected: pose.reflected,
                        translate: p.t.clone(),
                    }
                })
                .collect();
            let tiling = Tiling::new(t.clone(), n, scale, tiles);
            if let Err(v) = verify_tiling(&tiling) {
                return Err(SearchError::Internal(format!(
                    "found tiling fails verification: {}",
                    v[0]
                )));
            }
            Some(tiling)
        }
        None => None,
    };
    let load = |i: usize| ctx.prunes[i].load(Ordering::Relaxed);
    Ok(SearchOutcome {
        status,
        tiling,
        nodes: ctx.nodes.load(Ordering::Relaxed),
        prunes: PruneCounts {
            angle: load(0),
            cover: load(1),
            area: load(2),
        },
        proof_log: ctx.log.into_inner().expect("log lock"),
        orientation_set: opts.orientation_set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> TrapezoidSpec {
        s.parse().unwrap()
    }

    fn opts() -> SearchOptions {
        SearchOptions {
            parallel_width: 1,
            ..SearchOptions::default()
        }
    }

    #[test]
    fn scale_factors() {
        assert_eq!(scale_factor(25, 3), Some(QuadVal::int(5)));
        assert_eq!(scale_factor(12, 3), Some("2*sqrt(3)".parse().unwrap()));
        assert_eq!(scale_factor(18, 3), None);
        assert_eq!(scale_factor(3, 1), None);
        assert_eq!(scale_factor(1, 1), Some(QuadVal::one()));
    }

    #[test]
    fn rep1_is_identity() {
        let out = search_rep(&t("right(theta=1/3*pi, a=1/8)"), 1, &opts()).unwrap();
        assert_eq!(out.status, SearchStatus::Found);
        assert_eq!(out.tiling.unwrap().tiles, vec![PlacedTile::identity()]);
    }

    #[test]
    fn half_hexagon_rep4() {
        let out = search_rep(&t("iso(theta=1/3*pi, a=1)"), 4, &opts()).unwrap();
        assert_eq!(out.status, SearchStatus::Found, "{}", out.summary());
    }

    #[test]
    fn pose_angles() {
        let base = t("right(theta=1/3*pi, a=1/8)");
        let g = OrientationGroup::for_tile(&base).unwrap();
        let units: Vec<Point2> = (0..12)
            .map(|j| Point2::new(g.cos_sin(j).0.clone(), g.cos_sin(j).1.clone()))
            .collect();
        let p = make_pose(&base, &g, &units, 0, false).unwrap();
        assert_eq!(p.out_dir, [0, 3, 6, 8]);
        assert_eq!(p.ang, [2, 3, 3, 4]);
        let r = make_pose(&base, &g, &units, 0, true).unwrap();
        assert_eq!(r.ang.iter().sum::<u32>(), 12);
    }

    #[test]
    fn irrational_angles_rejected() {
        assert_eq!(
            search_rep(&t("right(theta=acos(3/5), a=1)"), 4, &opts()).unwrap_err(),
            SearchError::IrrationalAngle
        );
    }
}
