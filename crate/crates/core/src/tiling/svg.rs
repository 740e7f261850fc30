//! SVG rendering. Coordinates are rounded to 12 significant digits only at
//! output time.

use std::fmt::Write as _;
use std::path::Path;

use super::{Tiling, TilingError};

const PALETTE: [&str; 12] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
    "#86bcb6", "#d37295",
];

fn num(x: f64) -> String {
    let s = format!("{:.*e}", 11, x);
    let v: f64 = s.parse().unwrap_or(x);
    if v == 0.0 {
        "0".into()
    } else {
        format!("{}", v)
    }
}

pub fn svg_string(t: &Tiling) -> Result<String, TilingError> {
    let polys = t.polygons()?;
    let (lo, hi) = t.region.bbox();
    let (x0, y0) = lo.to_f64();
    let (x1, y1) = hi.to_f64();
    let (w, h) = (x1 - x0, y1 - y0);
    let stroke = (w.max(h) / 400.0).max(1e-9);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        num(x0),
        num(-y1),
        num(w),
        num(h)
    );
    // y is flipped so the region sits the right way up
    let points = |p: &crate::geometry::Polygon| {
        p.vertices()
            .iter()
            .map(|v| {
                let (x, y) = v.to_f64();
                format!("{},{}", num(x), num(-y))
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    // one path per tile, coloured by orientation
    for (p, tile) in polys.iter().zip(&t.tiles) {
        let colour = PALETTE[(tile.k.rem_euclid(12)) as usize];
        let dash = if tile.reflected {
            r#" stroke-dasharray="4 2""#
        } else {
            ""
        };
        let _ = writeln!(
            out,
            r#"  <path d="M {} Z" fill="{}" fill-opacity="0.7" stroke="black" stroke-width="{}"{}/>"#,
            points(p).replace(' ', " L "),
            colour,
            num(stroke),
            dash
        );
    }
    let _ = writeln!(
        out,
        r#"  <polygon points="{}" fill="none" stroke="black" stroke-width="{}"/>"#,
        points(&t.region),
        num(stroke * 2.0)
    );
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn render_svg(t: &Tiling, path: &Path) -> Result<(), TilingError> {
    let s = svg_string(t)?;
    std::fs::write(path, s).map_err(|e| TilingError::Io(format!("{}: {}", path.display(), e)))
}
