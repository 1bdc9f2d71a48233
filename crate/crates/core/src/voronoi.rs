//! Voronoi cells for the ε-modified l∞ norm, counted in triangles of area 1/8.
//!
//! The norm |v|_ε = max(|v₁|,|v₂|) + ε·min(|v₁|,|v₂|) with ε infinitesimal is
//! compared lexicographically on (max, min). Each unit square is cut into 8
//! triangles through its corners, edge midpoints and center. Ownership of a
//! triangle is decided at its centroid; all centroid coordinates are
//! multiples of 1/6, so the computation runs on integers scaled by 6.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{Cell, TorusPattern};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EpsNorm {
    pub major: Rational,
    pub minor: Rational,
}

impl EpsNorm {
    pub fn of(v: &[Rational; 2]) -> Self {
        let (a, b) = (abs(&v[0]), abs(&v[1]));
        if a >= b {
            EpsNorm { major: a, minor: b }
        } else {
            EpsNorm { major: b, minor: a }
        }
    }
}

fn abs(r: &Rational) -> Rational {
    if r < &Rational::default() {
        -r.clone()
    } else {
        r.clone()
    }
}

pub fn eps_compare(u: &[Rational; 2], v: &[Rational; 2]) -> Ordering {
    EpsNorm::of(u).cmp(&EpsNorm::of(v))
}

/// Octant `t` of the unit square at `anchor`. Octants run counterclockwise
/// from the bottom-left: octant 0 has vertices (0,0), (½,0), (½,½) relative
/// to the anchor, octant 1 has (½,0), (1,0), (½,½), and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub anchor: (i64, i64),
    pub octant: u8,
}

/// Centroids of the 8 octants, scaled by 6.
const CENTROID6: [(i64, i64); 8] = [(2, 1), (4, 1), (5, 2), (5, 4), (4, 5), (2, 5), (1, 4), (1, 2)];

/// Vertices of the 8 octants, scaled by 2.
const VERTICES2: [[(i64, i64); 3]; 8] = [
    [(0, 0), (1, 0), (1, 1)],
    [(1, 0), (2, 0), (1, 1)],
    [(2, 0), (2, 1), (1, 1)],
    [(2, 1), (2, 2), (1, 1)],
    [(2, 2), (1, 2), (1, 1)],
    [(1, 2), (0, 2), (1, 1)],
    [(0, 2), (0, 1), (1, 1)],
    [(0, 1), (0, 0), (1, 1)],
];

impl Triangle {
    pub fn new(anchor: (i64, i64), octant: u8) -> Self {
        assert!(octant < 8, "octant out of range");
        Triangle { anchor, octant }
    }

    /// Centroid scaled by 6.
    pub fn centroid6(&self) -> (i64, i64) {
        let (cx, cy) = CENTROID6[self.octant as usize];
        (6 * self.anchor.0 + cx, 6 * self.anchor.1 + cy)
    }

    pub fn centroid(&self) -> [Rational; 2] {
        let (x, y) = self.centroid6();
        [crate::rational::ratio(x, 6), crate::rational::ratio(y, 6)]
    }

    /// Vertices scaled by 2.
    pub fn vertices2(&self) -> [(i64, i64); 3] {
        VERTICES2[self.octant as usize].map(|(x, y)| (2 * self.anchor.0 + x, 2 * self.anchor.1 + y))
    }
}

fn key6(c6: (i64, i64), p: (i64, i64)) -> (i64, i64) {
    let dx = (6 * p.0 - c6.0).abs();
    let dy = (6 * p.1 - c6.1).abs();
    (dx.max(dy), dx.min(dy))
}

/// Index of the unique ε-nearest candidate to the triangle's centroid.
fn nearest(t: Triangle, candidates: impl Iterator<Item = (i64, i64)>) -> Result<Option<(i64, i64)>> {
    let c6 = t.centroid6();
    let mut best: Option<((i64, i64), (i64, i64))> = None;
    let mut tie: Option<(i64, i64)> = None;
    for p in candidates {
        let k = key6(c6, p);
        match best {
            None => best = Some((k, p)),
            Some((bk, _)) if k < bk => {
                best = Some((k, p));
                tie = None;
            }
            Some((bk, _)) if k == bk => tie = Some(p),
            _ => {}
        }
    }
    match (best, tie) {
        (Some((_, a)), Some(b)) => Err(Error::Tie { anchor: t.anchor, octant: t.octant, a, b }),
        (best, _) => Ok(best.map(|(_, p)| p)),
    }
}

/// Adds the center of every aligned 3×3 block that misses the pattern.
pub fn augment_isolated(p: &TorusPattern) -> Result<TorusPattern> {
    if p.dim() != 2 {
        return Err(Error::NotPlanar);
    }
    let (w, h) = (p.dims()[0] as i64, p.dims()[1] as i64);
    if w % 3 != 0 || h % 3 != 0 {
        return Err(Error::InvalidDims(format!("{w}x{h} is not divisible by 3")));
    }
    let mut out = p.clone();
    for by in (0..h).step_by(3) {
        for bx in (0..w).step_by(3) {
            let hit = (0..3).any(|j| (0..3).any(|i| p.contains(&[bx + i, by + j])));
            if !hit {
                out.set(&[bx + 1, by + 1], true)?;
            }
        }
    }
    Ok(out)
}

/// The plane point of S (lifted from the torus) that owns `t`.
///
/// Only lattice points within l∞ distance 4 of the unit square are scanned.
/// A point outside that range is more than 4 away from the centroid, so the
/// scan is exact whenever its winner lies within distance 4; otherwise the
/// triangle is reported as uncovered.
pub fn owner(t: Triangle, p: &TorusPattern) -> Result<Cell> {
    if p.dim() != 2 {
        return Err(Error::NotPlanar);
    }
    let (a, b) = t.anchor;
    let candidates =
        (b - 4..=b + 5).flat_map(|y| (a - 4..=a + 5).map(move |x| (x, y))).filter(|&(x, y)| p.contains(&[x, y]));
    match nearest(t, candidates)? {
        Some(q) if key6(t.centroid6(), q).0 <= 24 => Ok(Cell::from(q)),
        _ => Err(Error::Uncovered { anchor: t.anchor, octant: t.octant }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CellArea {
    pub eighths: u64,
}

impl CellArea {
    pub fn to_rational(self) -> Rational {
        crate::rational::ratio(self.eighths as i64, 8)
    }

    /// 8(A − 2).
    pub fn alpha(self) -> i64 {
        self.eighths as i64 - 16
    }
}

impl fmt::Display for CellArea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rational())
    }
}

/// Areas of all torus positions (zero off the pattern), by linear index.
/// The triangles of one fundamental domain are each credited to the orbit of
/// their owner, so the areas sum to the torus area.
pub fn cell_areas(p: &TorusPattern) -> Result<Vec<CellArea>> {
    if p.dim() != 2 {
        return Err(Error::NotPlanar);
    }
    let mut areas = vec![CellArea::default(); p.volume()];
    let (w, h) = (p.dims()[0] as i64, p.dims()[1] as i64);
    for b in 0..h {
        for a in 0..w {
            for o in 0..8 {
                let c = owner(Triangle::new((a, b), o), p)?;
                areas[p.index_of(c.coords())].eighths += 1;
            }
        }
    }
    Ok(areas)
}

pub fn cell_area(p: &TorusPattern, x: &Cell) -> Result<CellArea> {
    if x.dim() != 2 || p.dim() != 2 {
        return Err(Error::NotPlanar);
    }
    if !p.contains(x.coords()) {
        return Err(Error::NotInPattern(x.coords().to_vec()));
    }
    Ok(cell_areas(p)?[p.index_of(x.coords())])
}

pub fn alpha(p: &TorusPattern, x: &Cell) -> Result<i64> {
    Ok(cell_area(p, x)?.alpha())
}

/// Σ α over an explicit list of cells.
pub fn sigma(p: &TorusPattern, cells: &[Cell]) -> Result<i64> {
    let areas = cell_areas(p)?;
    cells
        .iter()
        .map(|x| {
            if !p.contains(x.coords()) {
                return Err(Error::NotInPattern(x.coords().to_vec()));
            }
            Ok(areas[p.index_of(x.coords())].alpha())
        })
        .sum()
}

/// Σ α⁰ over an explicit list of cells.
pub fn sigma0(p: &TorusPattern, cells: &[Cell]) -> Result<i64> {
    cells.iter().map(|x| Ok(alpha0(LocalConfig::of(p, x)?))).sum()
}

/// Moore offsets in bit order of [`LocalConfig`].
pub const MOORE_OFFSETS: [(i64, i64); 8] = [(-1, -1), (0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1)];

/// The occupied Moore neighbors of a cell, one bit per offset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LocalConfig(pub u8);

impl LocalConfig {
    pub fn from_offsets(offsets: &[(i64, i64)]) -> Result<Self> {
        let mut mask = 0u8;
        for o in offsets {
            let bit = MOORE_OFFSETS
                .iter()
                .position(|m| m == o)
                .ok_or_else(|| Error::InvalidArgument(format!("{o:?} is not a Moore offset")))?;
            mask |= 1 << bit;
        }
        Ok(LocalConfig(mask))
    }

    pub fn of(p: &TorusPattern, x: &Cell) -> Result<Self> {
        if p.dim() != 2 || x.dim() != 2 {
            return Err(Error::NotPlanar);
        }
        let mut mask = 0u8;
        for (bit, (dx, dy)) in MOORE_OFFSETS.iter().enumerate() {
            if p.contains(&[x.x() + dx, x.y() + dy]) {
                mask |= 1 << bit;
            }
        }
        Ok(LocalConfig(mask))
    }

    pub fn offsets(self) -> Vec<(i64, i64)> {
        (0..8).filter(|b| self.0 >> b & 1 == 1).map(|b| MOORE_OFFSETS[b]).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Image under symmetry `s` (0..8) of the square.
    pub fn transform(self, s: u8) -> Self {
        let map = |(x, y): (i64, i64)| match s {
            0 => (x, y),
            1 => (-y, x),
            2 => (-x, -y),
            3 => (y, -x),
            4 => (-x, y),
            5 => (x, -y),
            6 => (y, x),
            _ => (-y, -x),
        };
        let image: Vec<_> = self.offsets().into_iter().map(map).collect();
        Self::from_offsets(&image).expect("symmetries preserve the Moore set")
    }

    /// Smallest mask in the orbit under the 8 square symmetries.
    pub fn canonical(self) -> Self {
        (0..8).map(|s| self.transform(s)).min().expect("nonempty orbit")
    }
}

/// Area of the cell of the origin inside the 2×2 square |z|∞ ≤ 1, against
/// the occupied neighbors only.
pub fn narrow_cell_area(cfg: LocalConfig) -> CellArea {
    let mut competitors = vec![(0, 0)];
    competitors.extend(cfg.offsets());
    let mut eighths = 0;
    for (a, b) in [(-1, -1), (0, -1), (-1, 0), (0, 0)] {
        for o in 0..8 {
            let t = Triangle::new((a, b), o);
            // Exhaustively tested over all 256 configurations: no ties occur.
            let w = nearest(t, competitors.iter().copied())
                .expect("no ties among Moore neighbors")
                .expect("origin is a candidate");
            if w == (0, 0) {
                eighths += 1;
            }
        }
    }
    CellArea { eighths }
}

/// 8(A⁰ − 2).
pub fn alpha0(cfg: LocalConfig) -> i64 {
    narrow_cell_area(cfg).alpha()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConfigType {
    Isolated,
    Orth1,
    Diag1,
    L,
    LPrime,
    M,
    MPrime,
    N,
    NPrime,
    A,
    B,
    C,
    CPrime,
    CDoublePrime,
    D,
    E,
    F,
    FPrime,
    FDoublePrime,
}

impl ConfigType {
    pub const ALL: [ConfigType; 19] = [
        ConfigType::Isolated,
        ConfigType::Orth1,
        ConfigType::Diag1,
        ConfigType::L,
        ConfigType::LPrime,
        ConfigType::M,
        ConfigType::MPrime,
        ConfigType::N,
        ConfigType::NPrime,
        ConfigType::A,
        ConfigType::B,
        ConfigType::C,
        ConfigType::CPrime,
        ConfigType::CDoublePrime,
        ConfigType::D,
        ConfigType::E,
        ConfigType::F,
        ConfigType::FPrime,
        ConfigType::FDoublePrime,
    ];

    pub fn label(self) -> &'static str {
        use ConfigType::*;
        match self {
            Isolated => "isolated",
            Orth1 => "orth1",
            Diag1 => "diag1",
            L => "L",
            LPrime => "L'",
            M => "M",
            MPrime => "M'",
            N => "N",
            NPrime => "N'",
            A => "A",
            B => "B",
            C => "C",
            CPrime => "C'",
            CDoublePrime => "C''",
            D => "D",
            E => "E",
            F => "F",
            FPrime => "F'",
            FDoublePrime => "F''",
        }
    }

    /// One configuration of this type, with +y pointing up.
    pub fn representative(self) -> LocalConfig {
        use ConfigType::*;
        let offsets: &[(i64, i64)] = match self {
            Isolated => &[],
            Orth1 => &[(1, 0)],
            Diag1 => &[(1, 1)],
            L => &[(-1, 0), (1, 0)],
            LPrime => &[(0, 1), (1, 0)],
            M => &[(1, 1), (-1, 0)],
            MPrime => &[(1, 1), (1, 0)],
            N => &[(-1, 1), (1, -1)],
            NPrime => &[(1, 1), (1, -1)],
            A => &[(0, 1), (-1, 0), (1, 0)],
            B => &[(1, 1), (-1, 0), (1, 0)],
            C => &[(0, 1), (-1, 0), (1, -1)],
            CPrime => &[(-1, 1), (0, 1), (1, 0)],
            CDoublePrime => &[(0, 1), (1, 1), (1, 0)],
            D => &[(-1, 1), (1, 1), (1, -1)],
            E => &[(-1, 1), (0, 1), (1, -1)],
            F => &[(-1, 1), (1, 1), (0, -1)],
            FPrime => &[(-1, 1), (1, 1), (1, 0)],
            FDoublePrime => &[(-1, 1), (0, 1), (1, 1)],
        };
        LocalConfig::from_offsets(offsets).expect("Moore offsets")
    }
}

impl fmt::Display for ConfigType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The type whose symmetry orbit contains `cfg`; `None` above 3 neighbors.
pub fn classify_config(cfg: LocalConfig) -> Option<ConfigType> {
    let c = cfg.canonical();
    ConfigType::ALL.into_iter().find(|t| t.representative().canonical() == c)
}
