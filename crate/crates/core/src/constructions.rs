//! Named extremal and record patterns, and the embedded figure gallery.

use crate::error::{Error, Result};
use crate::io::{parse_pattern, PatternFile};
use crate::lattice::{Neighborhood, TorusPattern};
use crate::rational::{ratio, Rational};
use crate::rules::FiniteGrid;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedConstruction {
    pub name: String,
    pub params: Vec<i64>,
    pub expected_density: Rational,
    pub expected_degree: usize,
    pub neighborhood: Neighborhood,
    /// Life period for oscillators; `None` for static patterns.
    pub expected_period: Option<usize>,
}

fn entry(name: &str, params: &[i64], density: (i64, i64), degree: usize, nb: Neighborhood) -> NamedConstruction {
    NamedConstruction {
        name: name.to_string(),
        params: params.to_vec(),
        expected_density: ratio(density.0, density.1),
        expected_degree: degree,
        neighborhood: nb,
        expected_period: None,
    }
}

fn oscillator(name: &str, density: (i64, i64), degree: usize, period: usize) -> NamedConstruction {
    NamedConstruction { expected_period: Some(period), ..entry(name, &[], density, degree, Neighborhood::moore8()) }
}

/// Densest known pattern with Moore degree at most n, for n = 0..=8.
pub const DENSEST_BY_DEGREE: [&str; 9] = [
    "isolated_quarter",
    "dominoes_third",
    "stripes",
    "chicken_wire",
    "mod5_stripe",
    "cubic13",
    "mod5_complement",
    "mod3_complement",
    "full",
];

/// Every registered construction with the values it must reproduce.
pub fn registry() -> Vec<NamedConstruction> {
    let m = Neighborhood::moore8;
    let v = Neighborhood::von_neumann4;
    let t = Neighborhood::tri6;
    vec![
        entry("isolated_quarter", &[], (1, 4), 0, m()),
        entry("dominoes_third", &[], (1, 3), 1, m()),
        entry("stripes", &[], (1, 2), 2, m()),
        entry("chicken_wire", &[], (1, 2), 3, m()),
        entry("mod5_stripe", &[], (3, 5), 4, m()),
        entry("alt_three_fifths", &[], (3, 5), 4, m()),
        entry("fig5b_perturbed", &[], (3, 5), 4, m()),
        entry("cubic13", &[], (9, 13), 5, m()),
        entry("mod5_complement", &[], (4, 5), 6, m()),
        entry("mod3_complement", &[], (8, 9), 7, m()),
        entry("full", &[], (1, 1), 8, m()),
        entry("block_lattice", &[3, 3], (4, 9), 3, m()),
        entry("block_lattice", &[4, 5], (1, 5), 3, m()),
        entry("checkerboard", &[], (1, 2), 0, v()),
        entry("chicken_wire", &[], (1, 2), 1, v()),
        entry("vn_two_thirds", &[], (2, 3), 2, v()),
        entry("mod5_complement", &[], (4, 5), 3, v()),
        entry("full", &[], (1, 1), 4, v()),
        entry("tri_third", &[], (1, 3), 0, t()),
        entry("tri_domino", &[], (2, 5), 1, t()),
        entry("tri_half", &[], (1, 2), 2, t()),
        entry("tri_two_thirds", &[], (2, 3), 3, t()),
        entry("tri_three_quarters", &[], (3, 4), 4, t()),
        entry("tri_six_sevenths", &[], (6, 7), 5, t()),
        entry("full", &[], (1, 1), 6, t()),
        entry("zk_checkerboard", &[3], (1, 2), 0, Neighborhood::unit(3)),
        entry("zk_mod_complement", &[2], (4, 5), 3, Neighborhood::unit(2)),
        entry("zk_mod_complement", &[3], (6, 7), 5, Neighborhood::unit(3)),
        entry("hamming_complement", &[2], (3, 4), 4, Neighborhood::unit(3)),
        entry("hamming_complement", &[3], (7, 8), 12, Neighborhood::unit(7)),
        oscillator("blinker", (3, 25), 2, 2),
        oscillator("venetian_blinds", (1, 2), 5, 2),
        oscillator("blinds6", (1, 4), 5, 6),
        oscillator("lightspeed_wire7", (33, 91), 4, 7),
    ]
}

/// Names accepted by [`generate`].
pub const NAMES: [&str; 27] = [
    "stripes",
    "isolated_quarter",
    "dominoes_third",
    "chicken_wire",
    "mod5_stripe",
    "alt_three_fifths",
    "fig5b_perturbed",
    "cubic13",
    "mod5_complement",
    "mod3_complement",
    "full",
    "block_lattice",
    "checkerboard",
    "vn_two_thirds",
    "tri_third",
    "tri_domino",
    "tri_half",
    "tri_two_thirds",
    "tri_three_quarters",
    "tri_six_sevenths",
    "zk_checkerboard",
    "zk_mod_complement",
    "hamming_complement",
    "venetian_blinds",
    "blinds6",
    "blinker",
    "lightspeed_wire7",
];

fn no_params(name: &str, params: &[i64]) -> Result<()> {
    if params.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("`{name}` takes no parameters")))
    }
}

fn one_param(name: &str, params: &[i64], min: i64) -> Result<usize> {
    match params {
        [k] if *k >= min => Ok(*k as usize),
        _ => Err(Error::InvalidArgument(format!("`{name}` takes one parameter ≥ {min}"))),
    }
}

fn planar(w: usize, h: usize, f: impl Fn(i64, i64) -> bool) -> Result<TorusPattern> {
    TorusPattern::from_fn(&[w, h], |c| f(c[0], c[1]))
}

/// Cell x ∈ Z^k (as bits mod 2) lies in the Hamming code of length 2^l − 1
/// whose parity-check columns are the binary forms of 1..2^l − 1.
fn hamming_syndrome(x: &[i64]) -> usize {
    x.iter().enumerate().filter(|(_, &c)| c.rem_euclid(2) == 1).fold(0, |s, (i, _)| s ^ (i + 1))
}

/// The pattern on its minimal rectangular torus, or a small multiple where
/// noted (`venetian_blinds` uses 4×4, `blinker` 5×5).
pub fn generate(name: &str, params: &[i64]) -> Result<TorusPattern> {
    let m = |a: i64, q: i64| a.rem_euclid(q);
    match name {
        "stripes" => no_params(name, params).and_then(|_| planar(2, 1, |x, _| m(x, 2) == 0)),
        "isolated_quarter" => no_params(name, params).and_then(|_| planar(2, 2, |x, y| m(x, 2) == 0 && m(y, 2) == 0)),
        "dominoes_third" => no_params(name, params).and_then(|_| planar(3, 2, |x, y| m(x, 3) != 0 && m(y, 2) == 0)),
        "mod5_stripe" => no_params(name, params).and_then(|_| planar(5, 5, |x, y| m(x + 2 * y, 5) >= 2)),
        "cubic13" => {
            no_params(name, params).and_then(|_| planar(13, 13, |x, y| ![1, 5, 8, 12].contains(&m(2 * x + 3 * y, 13))))
        }
        "mod5_complement" => no_params(name, params).and_then(|_| planar(5, 5, |x, y| m(x + 2 * y, 5) != 0)),
        "mod3_complement" => no_params(name, params).and_then(|_| planar(3, 3, |x, y| m(x, 3) != 0 || m(y, 3) != 0)),
        "full" => match params {
            [] => TorusPattern::full(&[1, 1]),
            _ => TorusPattern::full(&vec![1; one_param(name, params, 1)?]),
        },
        "block_lattice" => match params {
            [a, b] if *a >= 3 && *b >= 3 => planar(*a as usize, *b as usize, |x, y| m(x, *a) < 2 && m(y, *b) < 2),
            _ => Err(Error::InvalidArgument("`block_lattice` takes two parameters ≥ 3".into())),
        },
        "checkerboard" => no_params(name, params).and_then(|_| planar(2, 2, |x, y| m(x - y, 2) == 0)),
        "vn_two_thirds" => no_params(name, params).and_then(|_| planar(3, 3, |x, y| m(x - y, 3) != 0)),
        "tri_third" => no_params(name, params).and_then(|_| planar(3, 3, |a, b| m(a + b, 3) == 0)),
        "tri_domino" => no_params(name, params).and_then(|_| {
            // Lattice spanned by (1,2) and (2,-1) is {(a,b): a + 2b ≡ 0 mod 5}.
            planar(5, 5, |a, b| m(a + 2 * b, 5) == 0 || m(a - 1 + 2 * b, 5) == 0)
        }),
        "tri_half" => no_params(name, params).and_then(|_| planar(1, 2, |_, b| m(b, 2) == 0)),
        "tri_two_thirds" => no_params(name, params).and_then(|_| planar(3, 3, |a, b| m(a + b, 3) != 0)),
        "tri_three_quarters" => no_params(name, params).and_then(|_| planar(2, 2, |a, b| m(a, 2) != 0 || m(b, 2) != 0)),
        "tri_six_sevenths" => no_params(name, params).and_then(|_| planar(7, 7, |a, b| m(a + 2 * b, 7) != 0)),
        "zk_checkerboard" => {
            let k = one_param(name, params, 1)?;
            TorusPattern::from_fn(&vec![2; k], |c| m(c.iter().sum(), 2) == 0)
        }
        "zk_mod_complement" => {
            let k = one_param(name, params, 1)?;
            let q = 2 * k as i64 + 1;
            TorusPattern::from_fn(&vec![q as usize; k], |c| {
                m(c.iter().enumerate().map(|(i, x)| (i as i64 + 1) * x).sum(), q) != 0
            })
        }
        "hamming_complement" => {
            let l = one_param(name, params, 2)?;
            if l > 3 {
                return Err(Error::InvalidArgument("`hamming_complement` supports l = 2 or 3".into()));
            }
            let k = (1 << l) - 1;
            TorusPattern::from_fn(&vec![2; k], |c| hamming_syndrome(c) != 0)
        }
        "venetian_blinds" => no_params(name, params).and_then(|_| planar(4, 4, |x, _| m(x, 4) < 2)),
        "blinds6" => no_params(name, params).and_then(|_| planar(8, 8, |x, _| m(x, 8) < 2)),
        "blinker" => no_params(name, params).and_then(|_| planar(5, 5, |x, y| y == 2 && (1..=3).contains(&x))),
        "chicken_wire" | "alt_three_fifths" | "fig5b_perturbed" | "lightspeed_wire7" => {
            no_params(name, params)?;
            let key = if name == "alt_three_fifths" { "moore_n4_alt" } else { name };
            gallery(key)?.torus.ok_or_else(|| Error::UnknownName(name.into()))
        }
        _ => Err(Error::UnknownName(name.into())),
    }
}

macro_rules! figure {
    ($name:literal, grid) => {
        ($name, Some(include_str!(concat!("../data/gallery/", $name, ".grid"))), None)
    };
    ($name:literal, both) => {
        (
            $name,
            Some(include_str!(concat!("../data/gallery/", $name, ".grid"))),
            Some(include_str!(concat!("../data/gallery/", $name, ".pat"))),
        )
    };
    ($name:literal, torus) => {
        ($name, None, Some(include_str!(concat!("../data/gallery/", $name, ".pat"))))
    };
}

type Figure = (&'static str, Option<&'static str>, Option<&'static str>);

const FIGURES: [Figure; 36] = [
    figure!("chicken_wire", both),
    figure!("tv_static", grid),
    figure!("onion_rings_3", both),
    figure!("onion_bulbs_2", both),
    figure!("hoey_1", both),
    figure!("hoey_2", grid),
    figure!("square_waves", both),
    figure!("moore_pattern", grid),
    figure!("dcc_onions", grid),
    figure!("octets", both),
    figure!("dozens", both),
    figure!("fig5b_perturbed", both),
    figure!("moore_n0", grid),
    figure!("moore_n1", grid),
    figure!("moore_n2", grid),
    figure!("moore_n4", grid),
    figure!("moore_n4_alt", both),
    figure!("moore_n5", grid),
    figure!("moore_n6", grid),
    figure!("moore_n7", grid),
    figure!("moore_n8", grid),
    figure!("vn4_n0", grid),
    figure!("vn4_n1_chicken_wire", grid),
    figure!("vn4_n2", grid),
    figure!("vn4_n3", grid),
    figure!("vn4_n4", grid),
    figure!("lightspeed_wire7", torus),
    ("blinker", None, None),
    ("venetian_blinds", None, None),
    ("blinds6", None, None),
    ("stripes", None, None),
    ("mod5_stripe", None, None),
    ("cubic13", None, None),
    ("mod5_complement", None, None),
    ("mod3_complement", None, None),
    ("checkerboard", None, None),
];

/// Still-life figures whose interiors must pass the still-life check.
pub const STILL_LIFE_FIGURES: [&str; 11] = [
    "chicken_wire",
    "tv_static",
    "onion_rings_3",
    "onion_bulbs_2",
    "hoey_1",
    "hoey_2",
    "square_waves",
    "moore_pattern",
    "dcc_onions",
    "octets",
    "dozens",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GalleryEntry {
    pub name: &'static str,
    /// The figure as printed, or one period of it.
    pub grid: FiniteGrid,
    /// One exact period, where the figure is periodic.
    pub torus: Option<TorusPattern>,
}

pub fn gallery_names() -> Vec<&'static str> {
    FIGURES.iter().map(|f| f.0).collect()
}

pub fn gallery(name: &str) -> Result<GalleryEntry> {
    let &(name, grid, torus) = FIGURES.iter().find(|f| f.0 == name).ok_or_else(|| Error::UnknownName(name.into()))?;
    let torus = match torus {
        Some(text) => match parse_pattern(text)? {
            PatternFile::Torus(p) => Some(p),
            PatternFile::Grid(_) => unreachable!("torus figure stored as grid"),
        },
        None if grid.is_none() => Some(generate(name, &[])?),
        None => None,
    };
    let grid = match grid {
        Some(text) => match parse_pattern(text)? {
            PatternFile::Grid(g) => g,
            PatternFile::Torus(_) => unreachable!("grid figure stored as torus"),
        },
        None => FiniteGrid::from_torus(torus.as_ref().expect("torus present"))?,
    };
    Ok(GalleryEntry { name, grid, torus })
}
