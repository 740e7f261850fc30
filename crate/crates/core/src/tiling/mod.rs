//! Placed copies of a tile, exact verification of rep-n tilings, and
//! substitution.

mod io;
mod svg;

pub use io::{parse_tiling, serialize_tiling};
pub use svg::{render_svg, svg_string};

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::angles::{cos_pi_exact, sin_pi_exact};
use crate::exactfield::{QuadVal, Rat};
use crate::geometry::{orient2d, segments_intersect, Location, Point2, Polygon, SegmentRelation};
use crate::trapezoid::TrapezoidSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("rotation by {0}·π is not exact in Q(√{1})")]
    OrientationOutsideField(Rat, u64),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid tiling: {0}")]
    Invariant(String),
    #[error("tiling does not verify: {0}")]
    NotVerified(String),
    #[error("io: {0}")]
    Io(String),
}

/// Rotations by multiples of the base angle `g = π/m`, the group generated
/// by the tile's internal angles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationGroup {
    m: i64,
    rot: Vec<(QuadVal, QuadVal)>,
}

impl OrientationGroup {
    /// `m` is the least common denominator of θ/π and ψ/π; for θ/π
    /// irrational only the half-turn is available (`m = 1`).
    pub fn for_tile(base: &TrapezoidSpec) -> Result<OrientationGroup, TilingError> {
        let m = match (base.theta().rational_tag(), base.psi().rational_tag()) {
            (Some(t), Some(p)) => t.q().lcm(&p.q()),
            _ => 1,
        };
        OrientationGroup::with_denominator(m, base.radicand())
    }

    /// Only rotations by 0 and π.
    pub fn axis_aligned() -> OrientationGroup {
        OrientationGroup::with_denominator(1, 1).expect("half-turns are rational")
    }

    fn with_denominator(m: i64, d: u64) -> Result<OrientationGroup, TilingError> {
        let mut rot = Vec::with_capacity(2 * m as usize);
        for k in 0..2 * m {
            let r = Rat::new(k, m);
            let (Some(c), Some(s)) = (cos_pi_exact(&r), sin_pi_exact(&r)) else {
                return Err(TilingError::OrientationOutsideField(r, d));
            };
            for v in [&c, &s] {
                if !v.is_rational() && v.d() != d {
                    return Err(TilingError::OrientationOutsideField(r, d));
                }
            }
            rot.push((c, s));
        }
        Ok(OrientationGroup { m, rot })
    }

    /// Number of rotations, `2m`.
    pub fn order(&self) -> i64 {
        2 * self.m
    }

    /// The base angle as a multiple of π.
    pub fn base_angle(&self) -> Rat {
        Rat::new(1, self.m)
    }

    pub fn normalize(&self, k: i64) -> i64 {
        k.rem_euclid(self.order())
    }

    pub fn cos_sin(&self, k: i64) -> &(QuadVal, QuadVal) {
        &self.rot[self.normalize(k) as usize]
    }

    /// Reflect (`x ↦ −x`) if asked, then rotate by `k·g`.
    pub fn apply_linear(&self, k: i64, reflected: bool, p: &Point2) -> Point2 {
        let (c, s) = self.cos_sin(k);
        let x = if reflected { -&p.x } else { p.x.clone() };
        Point2::new(c * &x - s * &p.y, s * &x + c * &p.y)
    }
}

/// A congruent copy: reflect, rotate by `k·g`, then translate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlacedTile {
    pub k: i64,
    pub reflected: bool,
    pub translate: Point2,
}

impl PlacedTile {
    pub fn identity() -> PlacedTile {
        PlacedTile {
            k: 0,
            reflected: false,
            translate: Point2::origin(),
        }
    }
}

/// Images of the canonical tile's vertices, in canonical order.
pub fn tile_vertex_images(base: &TrapezoidSpec, group: &OrientationGroup, t: &PlacedTile) -> [Point2; 4] {
    let canon = base.canonical_polygon(&QuadVal::one());
    let v = canon.vertices();
    std::array::from_fn(|i| &group.apply_linear(t.k, t.reflected, &v[i]) + &t.translate)
}

/// The placed copy as a counterclockwise polygon.
pub fn tile_polygon(base: &TrapezoidSpec, group: &OrientationGroup, t: &PlacedTile) -> Polygon {
    let [a, b, c, d] = tile_vertex_images(base, group, t);
    let vs = if t.reflected {
        vec![a, d, c, b]
    } else {
        vec![a, b, c, d]
    };
    Polygon::from_vertices_unchecked(vs)
}

/// A dissection of `scale·T` into `n` copies of `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    pub base: TrapezoidSpec,
    pub n: u32,
    pub scale: QuadVal,
    pub region: Polygon,
    pub tiles: Vec<PlacedTile>,
}

impl Tiling {
    pub fn new(base: TrapezoidSpec, n: u32, scale: QuadVal, tiles: Vec<PlacedTile>) -> Tiling {
        let region = base.canonical_polygon(&scale);
        Tiling {
            base,
            n,
            scale,
            region,
            tiles,
        }
    }

    /// The rep-1 tiling of `T` by itself.
    pub fn identity(base: TrapezoidSpec) -> Tiling {
        Tiling::new(base, 1, QuadVal::one(), vec![PlacedTile::identity()])
    }

    pub fn group(&self) -> Result<OrientationGroup, TilingError> {
        OrientationGroup::for_tile(&self.base)
    }

    pub fn polygons(&self) -> Result<Vec<Polygon>, TilingError> {
        let g = self.group()?;
        Ok(self.tiles.iter().map(|t| tile_polygon(&self.base, &g, t)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TileCount { expected: u32, got: usize },
    Scale(String),
    Orientation(String),
    NotCongruent(usize),
    OutsideRegion(usize, String),
    InteriorOverlap(usize, usize),
    Area { tiles: String, region: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TileCount { expected, got } => {
                write!(f, "tile-count: expected {}, got {}", expected, got)
            }
            Violation::Scale(s) => write!(f, "scale: {}", s),
            Violation::Orientation(s) => write!(f, "orientation: {}", s),
            Violation::NotCongruent(i) => write!(f, "not-congruent: tile {}", i),
            Violation::OutsideRegion(i, why) => write!(f, "outside-region: tile {} ({})", i, why),
            Violation::InteriorOverlap(i, j) => write!(f, "interior-overlap: tiles {} and {}", i, j),
            Violation::Area { tiles, region } => {
                write!(f, "area: tiles sum to {}, region has {}", tiles, region)
            }
        }
    }
}

/// Side lengths squared and dot products of consecutive edges, cyclically.
fn shape_signature(p: &Polygon) -> Vec<(QuadVal, QuadVal)> {
    let n = p.len();
    (0..n)
        .map(|i| {
            let e = p.vertex(i + 1) - p.vertex(i);
            let f = p.vertex(i + 2) - p.vertex(i + 1);
            (e.norm2(), e.dot(&f))
        })
        .collect()
}

fn congruent(a: &Polygon, b: &Polygon) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let sa = shape_signature(a);
    let mirrored: Vec<Point2> = b.vertices().iter().rev().cloned().collect();
    let n = sa.len();
    [
        shape_signature(b),
        shape_signature(&Polygon::from_vertices_unchecked(mirrored)),
    ]
    .iter()
    .any(|sb| (0..n).any(|s| (0..n).all(|i| sa[i] == sb[(i + s) % n])))
}

/// Whether two convex counterclockwise polygons have disjoint interiors:
/// some edge line weakly separates them.
pub fn convex_interiors_disjoint(a: &Polygon, b: &Polygon) -> bool {
    let separates = |p: &Polygon, q: &Polygon| {
        p.edges()
            .any(|(s, e)| q.vertices().iter().all(|v| orient2d(s, e, v) <= 0))
    };
    separates(a, b) || separates(b, a)
}

fn bboxes_overlap(a: &(Point2, Point2), b: &(Point2, Point2)) -> bool {
    a.0.x < b.1.x && b.0.x < a.1.x && a.0.y < b.1.y && b.0.y < a.1.y
}

fn containment(tile: &Polygon, region: &Polygon) -> Option<String> {
    for v in tile.vertices() {
        if region.locate(v) == Location::Outside {
            return Some(format!("vertex {} outside", v));
        }
    }
    for (s, e) in tile.edges() {
        let mid = (s + e).scale(&QuadVal::frac(1, 2));
        if region.locate(&mid) == Location::Outside {
            return Some(format!("edge midpoint {} outside", mid));
        }
        for (rs, re) in region.edges() {
            if let Ok(SegmentRelation::ProperCross) = segments_intersect(s, e, rs, re) {
                return Some("edge crosses region boundary".into());
            }
        }
    }
    for v in region.vertices() {
        if tile.locate(v) == Location::Inside {
            return Some(format!("region vertex {} inside tile", v));
        }
    }
    None
}

/// Exact checks: tile count and scale, congruence, containment, pairwise
/// interior-disjointness and area conservation. Together they imply that
/// the tiles cover the region exactly.
pub fn verify_tiling(t: &Tiling) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    if t.tiles.len() != t.n as usize {
        out.push(Violation::TileCount {
            expected: t.n,
            got: t.tiles.len(),
        });
    }
    if &t.scale * &t.scale != QuadVal::int(t.n as i64) || !t.scale.is_positive() {
        out.push(Violation::Scale(format!("scale {} squared is not {}", t.scale, t.n)));
    }
    let group = match t.group() {
        Ok(g) => g,
        Err(e) => {
            out.push(Violation::Orientation(e.to_string()));
            return Err(out);
        }
    };
    let canon = t.base.canonical_polygon(&QuadVal::one());
    let polys: Vec<Polygon> = t.tiles.iter().map(|p| tile_polygon(&t.base, &group, p)).collect();
    let mut per_tile: Vec<Vec<Violation>> = polys
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let mut v = Vec::new();
            if !congruent(p, &canon) {
                v.push(Violation::NotCongruent(i));
            }
            if let Some(why) = containment(p, &t.region) {
                v.push(Violation::OutsideRegion(i, why));
            }
            v
        })
        .collect();
    for v in per_tile.iter_mut() {
        out.append(v);
    }
    let boxes: Vec<_> = polys.iter().map(|p| p.bbox()).collect();
    let mut overlaps: Vec<Violation> = (0..polys.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (polys, boxes) = (&polys, &boxes);
            (i + 1..polys.len()).filter_map(move |j| {
                (bboxes_overlap(&boxes[i], &boxes[j]) && !convex_interiors_disjoint(&polys[i], &polys[j]))
                    .then_some(Violation::InteriorOverlap(i, j))
            })
        })
        .collect();
    overlaps.sort_by_key(|v| match v {
        Violation::InteriorOverlap(i, j) => (*i, *j),
        _ => (0, 0),
    });
    out.extend(overlaps);
    let tile_area = polys.iter().fold(QuadVal::zero(), |acc, p| acc + p.area());
    let region_area = t.region.area();
    if tile_area != region_area {
        out.push(Violation::Area {
            tiles: tile_area.to_string(),
            region: region_area.to_string(),
        });
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Replaces every tile of a verified rep-n tiling by a copy of the whole
/// tiling, giving a rep-n² tiling.
pub fn substitute(t: &Tiling) -> Result<Tiling, TilingError> {
    if let Err(v) = verify_tiling(t) {
        return Err(TilingError::NotVerified(v[0].to_string()));
    }
    let g = t.group()?;
    let mut tiles = Vec::with_capacity(t.tiles.len() * t.tiles.len());
    for outer in &t.tiles {
        let shift = outer.translate.scale(&t.scale);
        for inner in &t.tiles {
            let k = if outer.reflected {
                outer.k - inner.k
            } else {
                outer.k + inner.k
            };
            let moved = g.apply_linear(outer.k, outer.reflected, &inner.translate);
            tiles.push(PlacedTile {
                k: g.normalize(k),
                reflected: outer.reflected != inner.reflected,
                translate: &moved + &shift,
            });
        }
    }
    Ok(Tiling::new(t.base.clone(), t.n * t.n, &t.scale * &t.scale, tiles))
}
