//! Exact-arithmetic engine for reptile trapezoids: candidate filters,
//! exhaustive rep-n tiling search and exact tiling verification.

pub mod angles;
pub mod exactfield;
pub mod filters;
pub mod geometry;
pub mod search;
pub mod tiling;
pub mod trapezoid;

pub use angles::{AnglePi, ExactAngle};
pub use exactfield::{QuadVal, Rat};
pub use geometry::{Point2, Polygon};
pub use trapezoid::{TrapezoidClass, TrapezoidSpec};
