//! Polygon text files and solution JSON.
//!
//! ```text
//! POLY v1
//! EDGE 6 0        (optional: the weak-visibility edge)
//! SEED 42         (optional: generator seed)
//! N 7
//! -100.00000000000000 0.0000000000000000
//! ...
//! ```
//!
//! Coordinates are written with 17 significant digits in positional
//! notation, which round-trips every finite double exactly. Vertices are
//! stored counter-clockwise; a clockwise file is accepted and normalised.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geom::{Orientation, Point, Polygon};
use crate::guards::GuardSolution;

pub const MAGIC: &str = "POLY v1";

#[derive(Clone, Debug, PartialEq)]
pub struct PolygonFile {
    pub polygon: Polygon,
    pub edge: Option<(usize, usize)>,
    pub seed: Option<u64>,
}

impl PolygonFile {
    pub fn new(polygon: Polygon) -> Self {
        PolygonFile {
            polygon,
            edge: None,
            seed: None,
        }
    }
}

/// `x` with 17 significant digits, without an exponent.
pub fn format_coord(x: f64) -> String {
    if x == 0.0 {
        return "0.0000000000000000".into();
    }
    let sci = format!("{:.16e}", x.abs());
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("exponent");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let point = exp + 1; // digits before the decimal point
    let mut out = String::with_capacity(digits.len() + 4);
    if x < 0.0 {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat('0').take((-point) as usize));
        out.push_str(&digits);
    } else if point as usize >= digits.len() {
        out.push_str(&digits);
        out.extend(std::iter::repeat('0').take(point as usize - digits.len()));
        out.push_str(".0");
    } else {
        out.push_str(&digits[..point as usize]);
        out.push('.');
        out.push_str(&digits[point as usize..]);
    }
    out
}

pub fn emit_polygon(file: &PolygonFile) -> String {
    let mut s = String::new();
    s.push_str(MAGIC);
    s.push('\n');
    if let Some((u, v)) = file.edge {
        let _ = writeln!(s, "EDGE {u} {v}");
    }
    if let Some(seed) = file.seed {
        let _ = writeln!(s, "SEED {seed}");
    }
    let _ = writeln!(s, "N {}", file.polygon.len());
    for p in file.polygon.vertices() {
        let _ = writeln!(s, "{} {}", format_coord(p.x), format_coord(p.y));
    }
    s
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_index(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what}")))
}

pub fn parse_polygon(text: &str) -> Result<PolygonFile> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, MAGIC)) => {}
        Some((no, _)) => return Err(parse_err(no, format!("expected `{MAGIC}`"))),
        None => return Err(parse_err(1, "empty file")),
    }
    let mut edge = None;
    let mut seed = None;
    let count = loop {
        let Some((no, line)) = lines.next() else {
            return Err(parse_err(text.lines().count() + 1, "missing `N` line"));
        };
        let mut toks = line.split_whitespace();
        let key = toks.next().unwrap_or("");
        match key {
            "EDGE" if edge.is_none() => {
                let u = parse_index(toks.next(), no, "edge index")?;
                let v = parse_index(toks.next(), no, "edge index")?;
                edge = Some((u, v));
            }
            "SEED" if seed.is_none() => {
                let s = toks.next().ok_or_else(|| parse_err(no, "missing seed"))?;
                seed = Some(s.parse().map_err(|_| parse_err(no, "bad seed"))?);
            }
            "N" => break parse_index(toks.next(), no, "vertex count")?,
            "EDGE" | "SEED" => return Err(parse_err(no, format!("repeated `{key}`"))),
            _ => return Err(parse_err(no, format!("unexpected `{key}`"))),
        }
        if toks.next().is_some() {
            return Err(parse_err(no, "trailing tokens"));
        }
    };
    if count < 3 {
        return Err(parse_err(0, format!("a polygon needs at least 3 vertices, got {count}")));
    }
    let mut ring = Vec::with_capacity(count.min(1 << 16));
    for k in 0..count {
        let Some((no, line)) = lines.next() else {
            return Err(parse_err(0, format!("expected {count} vertices, found {k}")));
        };
        let mut toks = line.split_whitespace();
        let mut coord = |axis: &str| -> Result<f64> {
            let v: f64 = toks
                .next()
                .ok_or_else(|| parse_err(no, format!("missing {axis}")))?
                .parse()
                .map_err(|_| parse_err(no, format!("bad {axis}")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(parse_err(no, format!("{axis} is not finite")))
            }
        };
        let p = Point::new(coord("x")?, coord("y")?);
        if toks.next().is_some() {
            return Err(parse_err(no, "trailing tokens"));
        }
        ring.push(p);
    }
    if let Some((no, _)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(parse_err(no, "content after the vertex list"));
    }
    let polygon = Polygon::new(ring)?;
    let n = polygon.len();
    if let Some((u, v)) = edge {
        if u >= n || v >= n {
            return Err(parse_err(0, format!("edge ({u}, {v}) out of range")));
        }
        if polygon.input_orientation() == Orientation::Clockwise {
            // Reversal keeps vertex 0 in place.
            edge = Some(((n - u) % n, (n - v) % n));
        }
    }
    Ok(PolygonFile {
        polygon,
        edge,
        seed,
    })
}

pub fn solution_to_json(sol: &GuardSolution) -> String {
    serde_json::to_string_pretty(sol).expect("solutions serialise")
}

pub fn solution_from_json(text: &str) -> Result<GuardSolution> {
    serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn coordinate_text() {
        assert_eq!(format_coord(1.0), "1.0000000000000000");
        assert_eq!(format_coord(-100.0), "-100.00000000000000");
        assert_eq!(format_coord(0.1), "0.10000000000000001");
        assert_eq!(format_coord(1e-5), "0.000010000000000000001");
        assert_eq!(format_coord(1e20), "100000000000000000000.0");
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02e23, f64::MAX, f64::MIN_POSITIVE] {
            assert_eq!(format_coord(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn round_trip() {
        let mut file = PolygonFile::new(fixtures::comb(3));
        file.edge = Some((0, 1));
        file.seed = Some(9);
        let text = emit_polygon(&file);
        assert!(text.starts_with("POLY v1\nEDGE 0 1\nSEED 9\nN 12\n"));
        assert_eq!(parse_polygon(&text).unwrap(), file);
    }

    #[test]
    fn clockwise_input_is_normalised() {
        let text = "POLY v1\nEDGE 0 1\nN 4\n0 0\n0 1\n1 1\n1 0\n";
        let f = parse_polygon(text).unwrap();
        assert_eq!(f.polygon.vertex(1), Point::new(1.0, 0.0));
        // the same physical edge, now between vertices 0 and 3
        assert_eq!(f.edge, Some((0, 3)));
    }

    #[test]
    fn malformed_files() {
        for (text, line) in [
            ("", 1),
            ("POLY v2\nN 3\n", 1),
            ("POLY v1\nN 3\n0 0\n1 0\n", 0),
            ("POLY v1\nN 3\n0 0\n1 x\n0 1\n", 4),
            ("POLY v1\nFOO\nN 3\n", 2),
            ("POLY v1\nN 3\n0 0\n1 0\n0 1\n5 5\n", 6),
            ("POLY v1\nSEED 1\nSEED 2\nN 3\n", 3),
            ("POLY v1\nN 3\n0 0\n1 0\n0 inf\n", 5),
        ] {
            match parse_polygon(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(matches!(
            parse_polygon("POLY v1\nN 3\n0 0\n1 0\n2 0\n"),
            Err(Error::InvalidPolygon(_))
        ));
    }
}
