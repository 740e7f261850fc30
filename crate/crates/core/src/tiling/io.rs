//! Line-oriented text format for tilings.
//!
//! ```text
//! reptile-tiling v1
//! d 3
//! base right theta=1/3*pi a=1/8
//! n 25
//! scale 5/1+0/1*sqrt(3)
//! tile k=0 refl=0 tx=0/1+0/1*sqrt(3) ty=0/1+0/1*sqrt(3)
//! ```
//!
//! Coordinates are written with the explicit radicand so the file is
//! self-describing; `#` starts a comment.

use super::{PlacedTile, Tiling, TilingError};
use crate::exactfield::QuadVal;
use crate::geometry::Point2;
use crate::trapezoid::TrapezoidSpec;

const HEADER: &str = "reptile-tiling v1";

pub fn serialize_tiling(t: &Tiling) -> Result<String, TilingError> {
    let d = t.base.radicand();
    let lit = t
        .base
        .literal()
        .ok_or_else(|| TilingError::Invariant(format!("base tile {} has no literal form", t.base)))?;
    let base = lit
        .replacen('(', " ", 1)
        .replace(", ", " ")
        .strip_suffix(')')
        .unwrap_or_default()
        .to_string();
    let mut out = format!(
        "{}\nd {}\nbase {}\nn {}\nscale {}\n",
        HEADER,
        d,
        base,
        t.n,
        t.scale.to_literal(d)
    );
    for p in &t.tiles {
        out.push_str(&format!(
            "tile k={} refl={} tx={} ty={}\n",
            p.k,
            u8::from(p.reflected),
            p.translate.x.to_literal(d),
            p.translate.y.to_literal(d)
        ));
    }
    Ok(out)
}

fn syntax(line: usize, msg: impl Into<String>) -> TilingError {
    TilingError::Syntax { line, msg: msg.into() }
}

fn field(line: usize, s: &str) -> Result<QuadVal, TilingError> {
    s.parse().map_err(|e| syntax(line, format!("{}", e)))
}

fn check_radicand(line: usize, v: &QuadVal, d: u64) -> Result<(), TilingError> {
    if v.is_rational() || v.d() == d {
        Ok(())
    } else {
        Err(syntax(line, format!("value {} is not in Q(√{})", v, d)))
    }
}

pub fn parse_tiling(text: &str) -> Result<Tiling, TilingError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, l)) if l == HEADER => {}
        Some((i, l)) => return Err(syntax(i, format!("expected `{}`, found `{}`", HEADER, l))),
        None => return Err(syntax(0, "empty input")),
    }
    let (mut d, mut base, mut n, mut scale) = (None, None, None, None);
    let mut tiles = Vec::new();
    for (i, l) in lines {
        let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match key {
            "d" => d = Some(rest.parse::<u64>().map_err(|_| syntax(i, "bad radicand"))?),
            "base" => {
                let (kind, args) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| syntax(i, "bad base"))?;
                let args: Vec<&str> = args.split_whitespace().collect();
                let lit = format!("{}({})", kind, args.join(", "));
                let spec: TrapezoidSpec = lit.parse().map_err(|e| syntax(i, format!("{}", e)))?;
                base = Some(spec);
            }
            "n" => n = Some(rest.parse::<u32>().map_err(|_| syntax(i, "bad n"))?),
            "scale" => scale = Some((i, field(i, rest)?)),
            "tile" => {
                let (mut k, mut refl, mut tx, mut ty) = (None, None, None, None);
                for kv in rest.split_whitespace() {
                    let (name, val) = kv
                        .split_once('=')
                        .ok_or_else(|| syntax(i, format!("bad token `{}`", kv)))?;
                    match name {
                        "k" => k = Some(val.parse::<i64>().map_err(|_| syntax(i, "bad k"))?),
                        "refl" => {
                            refl = Some(match val {
                                "0" => false,
                                "1" => true,
                                _ => return Err(syntax(i, "refl must be 0 or 1")),
                            })
                        }
                        "tx" => tx = Some(field(i, val)?),
                        "ty" => ty = Some(field(i, val)?),
                        _ => return Err(syntax(i, format!("unknown key `{}`", name))),
                    }
                }
                match (k, refl, tx, ty) {
                    (Some(k), Some(reflected), Some(x), Some(y)) => tiles.push((
                        i,
                        PlacedTile {
                            k,
                            reflected,
                            translate: Point2::new(x, y),
                        },
                    )),
                    _ => return Err(syntax(i, "tile needs k, refl, tx and ty")),
                }
            }
            _ => return Err(syntax(i, format!("unknown record `{}`", key))),
        }
    }
    let d = d.ok_or_else(|| syntax(0, "missing `d`"))?;
    let base = base.ok_or_else(|| syntax(0, "missing `base`"))?;
    let n = n.ok_or_else(|| syntax(0, "missing `n`"))?;
    let (si, scale) = scale.ok_or_else(|| syntax(0, "missing `scale`"))?;
    if base.radicand() != 1 && base.radicand() != d {
        return Err(syntax(
            0,
            format!("base tile lives in Q(√{}), file says d = {}", base.radicand(), d),
        ));
    }
    check_radicand(si, &scale, d)?;
    for (i, p) in &tiles {
        check_radicand(*i, &p.translate.x, d)?;
        check_radicand(*i, &p.translate.y, d)?;
    }
    Ok(Tiling::new(base, n, scale, tiles.into_iter().map(|(_, p)| p).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let base: TrapezoidSpec = "right(theta=1/3*pi, a=1/8)".parse().unwrap();
        let t = Tiling::new(
            base,
            1,
            QuadVal::one(),
            vec![PlacedTile {
                k: 7,
                reflected: true,
                translate: Point2::new("1/2".parse().unwrap(), "-1/3*sqrt(3)".parse().unwrap()),
            }],
        );
        let s = serialize_tiling(&t).unwrap();
        assert!(s.contains("base right theta=1/3*pi a=1/8\n"));
        assert!(s.contains("tile k=7 refl=1 tx=1/2+0/1*sqrt(3) ty=0/1-1/3*sqrt(3)\n"));
        assert_eq!(parse_tiling(&s).unwrap(), t);
    }

    #[test]
    fn generic_base_round_trip() {
        let base: TrapezoidSpec = "gen(theta=1/6*pi, psi=1/3*pi, a=2-1/3*sqrt(3))".parse().unwrap();
        let t = Tiling::identity(base);
        assert_eq!(parse_tiling(&serialize_tiling(&t).unwrap()).unwrap(), t);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "reptile-tiling v1\nd 3\nbase right theta=1/3*pi a=1/8\nn 1\nscale 1\ntile k=0 refl=2 tx=0 ty=0\n";
        assert!(matches!(parse_tiling(bad), Err(TilingError::Syntax { line: 6, .. })));
        assert!(matches!(parse_tiling("nope"), Err(TilingError::Syntax { line: 1, .. })));
        let wrong_field =
            "reptile-tiling v1\nd 3\nbase right theta=1/3*pi a=1/8\nn 1\nscale 1\ntile k=0 refl=0 tx=sqrt(2) ty=0\n";
        assert!(matches!(
            parse_tiling(wrong_field),
            Err(TilingError::Syntax { line: 6, .. })
        ));
    }
}
