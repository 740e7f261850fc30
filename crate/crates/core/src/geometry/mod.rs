//! Exact planar predicates over [`QuadVal`] coordinates and simple polygons.

mod region;

pub use region::{region_family, RegionKind};

use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use crate::exactfield::{FieldError, QuadVal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not simple: edges {0} and {1} intersect")]
    NotSimple(usize, usize),
    #[error("polygon is not counterclockwise")]
    Clockwise,
    #[error("vertex {0} is collinear with its neighbours")]
    Collinear(usize),
    #[error("degenerate segment at {0}")]
    DegenerateSegment(String),
    #[error("{0}")]
    FamilyMismatch(String),
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: QuadVal,
    pub y: QuadVal,
}

impl Point2 {
    pub fn new(x: QuadVal, y: QuadVal) -> Point2 {
        Point2 { x, y }
    }

    pub fn origin() -> Point2 {
        Point2::new(QuadVal::zero(), QuadVal::zero())
    }

    pub fn dot(&self, o: &Point2) -> QuadVal {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Point2) -> QuadVal {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> QuadVal {
        self.dot(self)
    }

    pub fn scale(&self, s: &QuadVal) -> Point2 {
        Point2::new(&self.x * s, &self.y * s)
    }

    /// Lowest-then-leftmost order.
    pub fn cmp_yx(&self, o: &Point2) -> std::cmp::Ordering {
        self.y.cmp(&o.y).then_with(|| self.x.cmp(&o.x))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add<&Point2> for &Point2 {
    type Output = Point2;
    fn add(self, o: &Point2) -> Point2 {
        Point2::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub<&Point2> for &Point2 {
    type Output = Point2;
    fn sub(self, o: &Point2) -> Point2 {
        Point2::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Neg for &Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-&self.x, -&self.y)
    }
}

/// Sign of `(q − p) × (r − p)`: `+1` for a left turn.
pub fn orient2d(p: &Point2, q: &Point2, r: &Point2) -> i32 {
    (q - p).cross(&(r - p)).signum()
}

/// Whether `p` lies on the closed segment `ab` (assumed non-degenerate).
pub fn on_segment(p: &Point2, a: &Point2, b: &Point2) -> bool {
    orient2d(a, b, p) == 0 && (p - a).dot(&(p - b)).signum() <= 0
}

fn strictly_inside_segment(p: &Point2, a: &Point2, b: &Point2) -> bool {
    orient2d(a, b, p) == 0 && (p - a).dot(&(p - b)).is_negative()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentRelation {
    Disjoint,
    TouchAtPoint(Point2),
    OverlapCollinear,
    ProperCross,
}

pub fn segments_intersect(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> Result<SegmentRelation, GeometryError> {
    if a == b {
        return Err(GeometryError::DegenerateSegment(a.to_string()));
    }
    if c == d {
        return Err(GeometryError::DegenerateSegment(c.to_string()));
    }
    let o1 = orient2d(a, b, c);
    let o2 = orient2d(a, b, d);
    let o3 = orient2d(c, d, a);
    let o4 = orient2d(c, d, b);
    if o1 == 0 && o2 == 0 {
        // Collinear: project on the dominant axis and compare intervals.
        let key = |p: &Point2| if a.x != b.x { p.x.clone() } else { p.y.clone() };
        let (mut s0, mut s1) = (key(a), key(b));
        if s0 > s1 {
            std::mem::swap(&mut s0, &mut s1);
        }
        let (mut t0, mut t1) = (key(c), key(d));
        if t0 > t1 {
            std::mem::swap(&mut t0, &mut t1);
        }
        let lo = if s0 > t0 { s0 } else { t0 };
        let hi = if s1 < t1 { s1 } else { t1 };
        return Ok(match lo.cmp(&hi) {
            std::cmp::Ordering::Greater => SegmentRelation::Disjoint,
            std::cmp::Ordering::Less => SegmentRelation::OverlapCollinear,
            std::cmp::Ordering::Equal => {
                let p = [a, b].into_iter().find(|p| key(p) == lo).unwrap().clone();
                SegmentRelation::TouchAtPoint(p)
            }
        });
    }
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return Ok(SegmentRelation::ProperCross);
    }
    for (p, s, e) in [(c, a, b), (d, a, b), (a, c, d), (b, c, d)] {
        if on_segment(p, s, e) {
            return Ok(SegmentRelation::TouchAtPoint(p.clone()));
        }
    }
    Ok(SegmentRelation::Disjoint)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// A simple counterclockwise polygon.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl Polygon {
    /// Validated constructor: at least three vertices, counterclockwise,
    /// simple, with no three consecutive vertices collinear.
    pub fn new(vertices: Vec<Point2>) -> Result<Polygon, GeometryError> {
        let p = Polygon { vertices };
        p.validate()?;
        Ok(p)
    }

    pub fn from_vertices_unchecked(vertices: Vec<Point2>) -> Polygon {
        Polygon { vertices }
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        let n = self.vertices.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices(n));
        }
        for i in 0..n {
            let (a, b, c) = (self.vertex(i + n - 1), self.vertex(i), self.vertex(i + 1));
            if a == b {
                return Err(GeometryError::DegenerateSegment(b.to_string()));
            }
            if orient2d(a, b, c) == 0 {
                return Err(GeometryError::Collinear(i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let rel = segments_intersect(self.vertex(i), self.vertex(i + 1), self.vertex(j), self.vertex(j + 1))?;
                let ok = match rel {
                    SegmentRelation::Disjoint => !adjacent,
                    SegmentRelation::TouchAtPoint(_) => adjacent,
                    _ => false,
                };
                if !ok {
                    return Err(GeometryError::NotSimple(i, j));
                }
            }
        }
        if !self.signed_area2().is_positive() {
            return Err(GeometryError::Clockwise);
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex `i` modulo the vertex count.
    pub fn vertex(&self, i: usize) -> &Point2 {
        &self.vertices[i % self.vertices.len()]
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point2, &Point2)> {
        (0..self.len()).map(move |i| (self.vertex(i), self.vertex(i + 1)))
    }

    /// Twice the signed shoelace area.
    pub fn signed_area2(&self) -> QuadVal {
        self.edges().fold(QuadVal::zero(), |acc, (p, q)| acc + p.cross(q))
    }

    pub fn area(&self) -> QuadVal {
        self.signed_area2() * QuadVal::frac(1, 2)
    }

    /// Exact point location by winding number.
    pub fn locate(&self, p: &Point2) -> Location {
        let mut wn = 0i32;
        for (a, b) in self.edges() {
            if on_segment(p, a, b) {
                return Location::Boundary;
            }
            if a.y <= p.y {
                if b.y > p.y && orient2d(a, b, p) > 0 {
                    wn += 1;
                }
            } else if b.y <= p.y && orient2d(a, b, p) < 0 {
                wn -= 1;
            }
        }
        if wn == 0 {
            Location::Outside
        } else {
            Location::Inside
        }
    }

    /// Whether `p` lies strictly inside the edge `i → i+1`.
    pub fn on_edge_interior(&self, i: usize, p: &Point2) -> bool {
        strictly_inside_segment(p, self.vertex(i), self.vertex(i + 1))
    }

    pub fn translate(&self, t: &Point2) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|v| v + t).collect(),
        }
    }

    pub fn bbox(&self) -> (Point2, Point2) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            if v.x < lo.x {
                lo.x = v.x.clone();
            }
            if v.y < lo.y {
                lo.y = v.y.clone();
            }
            if v.x > hi.x {
                hi.x = v.x.clone();
            }
            if v.y > hi.y {
                hi.y = v.y.clone();
            }
        }
        (lo, hi)
    }

    /// One vertex per line: `x y` as field literals.
    pub fn to_text(&self, d: u64) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            s.push_str(&format!("{} {}\n", v.x.to_literal(d), v.y.to_literal(d)));
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Polygon, GeometryError> {
        let mut vs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let (Some(x), Some(y), None) = (it.next(), it.next(), it.next()) else {
                return Err(GeometryError::Parse(i + 1, "expected two coordinates".into()));
            };
            let p = |s: &str| {
                s.parse::<QuadVal>()
                    .map_err(|e| GeometryError::Parse(i + 1, e.to_string()))
            };
            vs.push(Point2::new(p(x)?, p(y)?));
        }
        crate::exactfield::common_radicand(vs.iter().flat_map(|v| [&v.x, &v.y]))?;
        Polygon::new(vs)
    }
}

/// Exact shoelace area of a validated polygon.
pub fn polygon_area(p: &Polygon) -> Result<QuadVal, GeometryError> {
    p.validate()?;
    Ok(p.area())
}
