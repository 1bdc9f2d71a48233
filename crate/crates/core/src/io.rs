//! Text formats for torus patterns, finite grids and weight certificates.
//!
//! ```text
//! torus 2 4 2        grid 5 3          cert n 4 D 5/8
//! ..##               .....             box 2 2
//! ##..               .###.             1 2
//!                    .....             3/2 0
//! ```
//!
//! Tori of dimension 2 and grids list rows (row r is y = r, column c is
//! x = c) with `#` for cells and `.` for gaps. Tori of any other dimension
//! list one cell per line as space-separated coordinates. Lines starting
//! with `!` are comments and blank lines are ignored.

use std::fmt::Write as _;

use crate::bounds::WeightCertificate;
use crate::error::{Error, Result};
use crate::lattice::{Neighborhood, TorusPattern};
use crate::rational::{parse_rational, Rational};
use crate::rules::FiniteGrid;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternFile {
    Torus(TorusPattern),
    Grid(FiniteGrid),
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end())).filter(|(_, l)| !l.is_empty() && !l.starts_with('!'))
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| err(line, format!("invalid {what} `{tok}`")))
}

fn parse_rows(
    lines: &mut dyn Iterator<Item = (usize, &str)>,
    width: usize,
    height: usize,
    header_line: usize,
) -> Result<Vec<bool>> {
    let mut bits = Vec::with_capacity(width * height);
    for r in 0..height {
        let (ln, row) = lines.next().ok_or_else(|| err(header_line, format!("expected {height} rows, found {r}")))?;
        let n = row.chars().count();
        if n != width {
            return Err(err(ln, format!("row has {n} characters, expected {width}")));
        }
        for ch in row.chars() {
            match ch {
                '#' => bits.push(true),
                '.' => bits.push(false),
                _ => return Err(err(ln, format!("illegal character `{ch}`"))),
            }
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(err(ln, "unexpected extra row"));
    }
    Ok(bits)
}

pub fn parse_pattern(text: &str) -> Result<PatternFile> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    match toks.next() {
        Some("torus") => {
            let k: usize = parse_num(toks.next(), hl, "dimension")?;
            if k == 0 {
                return Err(err(hl, "dimension must be positive"));
            }
            let dims: Vec<usize> =
                (0..k).map(|i| parse_num(toks.next(), hl, &format!("modulus {}", i + 1))).collect::<Result<_>>()?;
            if toks.next().is_some() {
                return Err(err(hl, "trailing tokens in header"));
            }
            if dims.contains(&0) {
                return Err(err(hl, "moduli must be positive"));
            }
            if k == 2 {
                let bits = parse_rows(&mut lines, dims[0], dims[1], hl)?;
                let p = TorusPattern::from_bits(&dims, bits).map_err(|e| err(hl, e.to_string()))?;
                return Ok(PatternFile::Torus(p));
            }
            let mut p = TorusPattern::empty(&dims).map_err(|e| err(hl, e.to_string()))?;
            for (ln, row) in lines {
                let coords: Vec<i64> = row
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| err(ln, format!("invalid coordinate `{t}`"))))
                    .collect::<Result<_>>()?;
                if coords.len() != k {
                    return Err(err(ln, format!("expected {k} coordinates, found {}", coords.len())));
                }
                if coords.iter().zip(&dims).any(|(&c, &d)| c < 0 || c >= d as i64) {
                    return Err(err(ln, "coordinate outside the torus"));
                }
                if p.contains(&coords) {
                    return Err(err(ln, "duplicate cell"));
                }
                p.set(&coords, true).map_err(|e| err(ln, e.to_string()))?;
            }
            Ok(PatternFile::Torus(p))
        }
        Some("grid") => {
            let w: usize = parse_num(toks.next(), hl, "width")?;
            let h: usize = parse_num(toks.next(), hl, "height")?;
            if toks.next().is_some() {
                return Err(err(hl, "trailing tokens in header"));
            }
            if w == 0 || h == 0 {
                return Err(err(hl, "grid sides must be positive"));
            }
            let bits = parse_rows(&mut lines, w, h, hl)?;
            let g = FiniteGrid::from_fn(w, h, |x, y| bits[y as usize * w + x as usize])
                .map_err(|e| err(hl, e.to_string()))?;
            Ok(PatternFile::Grid(g))
        }
        Some(other) => Err(err(hl, format!("unknown header `{other}`"))),
        None => Err(err(hl, "empty header")),
    }
}

pub fn parse_torus(text: &str) -> Result<TorusPattern> {
    match parse_pattern(text)? {
        PatternFile::Torus(p) => Ok(p),
        PatternFile::Grid(_) => Err(err(1, "expected a torus pattern, found a grid")),
    }
}

pub fn parse_grid(text: &str) -> Result<FiniteGrid> {
    match parse_pattern(text)? {
        PatternFile::Grid(g) => Ok(g),
        PatternFile::Torus(_) => Err(err(1, "expected a grid, found a torus pattern")),
    }
}

fn push_rows(out: &mut String, width: usize, bits: impl Iterator<Item = bool>) {
    for (i, b) in bits.enumerate() {
        out.push(if b { '#' } else { '.' });
        if (i + 1) % width == 0 {
            out.push('\n');
        }
    }
}

pub fn write_torus(p: &TorusPattern) -> String {
    let mut out = format!("torus {}", p.dim());
    for d in p.dims() {
        let _ = write!(out, " {d}");
    }
    out.push('\n');
    if p.dim() == 2 {
        push_rows(&mut out, p.dims()[0], p.bits().iter().copied());
    } else {
        for c in p.cells() {
            let strs: Vec<String> = c.coords().iter().map(|v| v.to_string()).collect();
            out.push_str(&strs.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn write_grid(g: &FiniteGrid) -> String {
    let mut out = format!("grid {} {}\n", g.width(), g.height());
    let (w, h) = (g.width() as i64, g.height() as i64);
    push_rows(&mut out, g.width(), (0..h).flat_map(|y| (0..w).map(move |x| (x, y))).map(|(x, y)| g.get(x, y)));
    out
}

pub fn write_pattern(f: &PatternFile) -> String {
    match f {
        PatternFile::Torus(p) => write_torus(p),
        PatternFile::Grid(g) => write_grid(g),
    }
}

/// Reads a certificate. The neighborhood defaults to `moore8`; an optional
/// trailing `nb <name>` in the header selects another planar one.
pub fn parse_certificate(text: &str) -> Result<WeightCertificate> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() < 5 || toks[0] != "cert" || toks[1] != "n" || toks[3] != "D" {
        return Err(err(hl, "expected `cert n <n> D <p>/<q>`"));
    }
    let n: usize = parse_num(Some(toks[2]), hl, "degree")?;
    let d = parse_rational(toks[4]).ok_or_else(|| err(hl, format!("invalid bound `{}`", toks[4])))?;
    let nb = match &toks[5..] {
        [] => Neighborhood::moore8(),
        ["nb", name] => Neighborhood::by_name(name).map_err(|e| err(hl, e.to_string()))?,
        _ => return Err(err(hl, "trailing tokens in header")),
    };
    let (bl, boxline) = lines.next().ok_or_else(|| err(hl + 1, "missing `box W H` line"))?;
    let mut bt = boxline.split_whitespace();
    if bt.next() != Some("box") {
        return Err(err(bl, "expected `box W H`"));
    }
    let w: usize = parse_num(bt.next(), bl, "box width")?;
    let h: usize = parse_num(bt.next(), bl, "box height")?;
    if bt.next().is_some() {
        return Err(err(bl, "trailing tokens in box line"));
    }
    let mut weights: Vec<Rational> = Vec::with_capacity(w * h);
    for r in 0..h {
        let (ln, row) = lines.next().ok_or_else(|| err(bl, format!("expected {h} weight rows, found {r}")))?;
        let vals: Vec<Rational> = row
            .split_whitespace()
            .map(|t| parse_rational(t).ok_or_else(|| err(ln, format!("invalid weight `{t}`"))))
            .collect::<Result<_>>()?;
        if vals.len() != w {
            return Err(err(ln, format!("row has {} weights, expected {w}", vals.len())));
        }
        weights.extend(vals);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(err(ln, "unexpected extra row"));
    }
    WeightCertificate::new(w, h, weights, nb, n, d).map_err(|e| err(hl, e.to_string()))
}

pub fn write_certificate(c: &WeightCertificate) -> String {
    let mut out = format!("cert n {} D {}", c.n, c.d);
    if c.nb == Neighborhood::von_neumann4() {
        out.push_str(" nb vn4");
    } else if c.nb == Neighborhood::tri6() {
        out.push_str(" nb tri6");
    }
    let _ = writeln!(out, "\nbox {} {}", c.width, c.height);
    for row in c.weights.chunks(c.width) {
        let strs: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&strs.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn stripes_torus() {
        let text = "torus 2 4 4\n#.#.\n#.#.\n#.#.\n#.#.\n";
        let p = parse_torus(text).unwrap();
        assert_eq!(p, TorusPattern::from_fn(&[4, 4], |c| c[0] % 2 == 0).unwrap());
        assert_eq!(write_torus(&p), text);
    }

    #[test]
    fn grid_and_comments() {
        let text = "! a comment\ngrid 5 4\n.....\n.##..\n! inner\n.##..\n.....   \n";
        let g = parse_grid(text).unwrap();
        assert_eq!((g.width(), g.height(), g.len()), (5, 4, 4));
        assert_eq!(write_grid(&g), "grid 5 4\n.....\n.##..\n.##..\n.....\n");
    }

    #[test]
    fn errors_name_lines() {
        let e = parse_pattern("torus 2 3 2\n#.#\n#.\n").unwrap_err();
        assert_eq!(e, Error::Parse { line: 3, msg: "row has 2 characters, expected 3".into() });
        let e = parse_pattern("torus 2 3 2\n#.#\n#x.\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        assert!(matches!(parse_pattern("torus 2 3\n").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(matches!(parse_pattern("torus 2 3 1\n...\n...\n").unwrap_err(), Error::Parse { line: 3, .. }));
        assert!(matches!(parse_pattern("torus 2 3 2\n...\n").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(matches!(parse_pattern("square 3\n").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(matches!(parse_pattern("").unwrap_err(), Error::Parse { .. }));
        assert!(matches!(parse_pattern("torus 3 2 2 2\n0 0\n").unwrap_err(), Error::Parse { line: 2, .. }));
        assert!(matches!(parse_pattern("torus 3 2 2 2\n0 0 2\n").unwrap_err(), Error::Parse { line: 2, .. }));
        assert!(matches!(parse_pattern("torus 3 2 2 2\n0 0 1\n0 0 1\n").unwrap_err(), Error::Parse { line: 3, .. }));
    }

    #[test]
    fn cell_list_dimensions() {
        let text = "torus 3 2 2 2\n0 0 0\n1 1 0\n";
        let p = parse_torus(text).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(write_torus(&p), text);
        let one = parse_torus("torus 1 5\n0\n3\n").unwrap();
        assert_eq!(write_torus(&one), "torus 1 5\n0\n3\n");
    }

    #[test]
    fn certificates() {
        let text = "cert n 4 D 5/8\nbox 2 2\n1 2\n3/2 0\n";
        let c = parse_certificate(text).unwrap();
        assert_eq!(c.n, 4);
        assert_eq!(c.d, ratio(5, 8));
        assert_eq!(c.weights, vec![int(1), int(2), ratio(3, 2), int(0)]);
        assert_eq!(write_certificate(&c), text);
        let vn = parse_certificate("cert n 1 D 1/2 nb vn4\nbox 1 1\n1\n").unwrap();
        assert_eq!(vn.nb, Neighborhood::von_neumann4());
        assert_eq!(write_certificate(&vn), "cert n 1 D 1/2 nb vn4\nbox 1 1\n1\n");
        assert!(matches!(
            parse_certificate("cert n 4 D 5/8\nbox 2 2\n1 2\n3/2\n").unwrap_err(),
            Error::Parse { line: 4, .. }
        ));
        assert!(matches!(parse_certificate("cert n 4 D x\nbox 1 1\n1\n").unwrap_err(), Error::Parse { line: 1, .. }));
        assert!(parse_certificate("cert n 4 D 1\nbox 1 1\n-1\n").is_err());
    }
}
