//! Periodic lattice subsets stored on rectangular tori.
//!
//! Neighbor counts are taken per offset: if two offsets of a neighborhood
//! land on the same torus cell, both count. This matches the count in the
//! infinite periodic extension for every torus size.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{from_counts, Rational};

/// Largest torus volume accepted by constructors.
pub const MAX_VOLUME: usize = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell(Vec<i64>);

impl Cell {
    pub fn new(coords: Vec<i64>) -> Self {
        Cell(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn x(&self) -> i64 {
        self.0[0]
    }

    pub fn y(&self) -> i64 {
        self.0[1]
    }
}

impl From<Vec<i64>> for Cell {
    fn from(v: Vec<i64>) -> Self {
        Cell(v)
    }
}

impl From<&[i64]> for Cell {
    fn from(v: &[i64]) -> Self {
        Cell(v.to_vec())
    }
}

impl<const K: usize> From<[i64; K]> for Cell {
    fn from(v: [i64; K]) -> Self {
        Cell(v.to_vec())
    }
}

impl From<(i64, i64)> for Cell {
    fn from((a, b): (i64, i64)) -> Self {
        Cell(vec![a, b])
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite symmetric set of nonzero offsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Neighborhood {
    dim: usize,
    offsets: Vec<Vec<i64>>,
}

impl Neighborhood {
    pub fn new(dim: usize, offsets: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidNeighborhood("dimension must be at least 1".into()));
        }
        for (i, o) in offsets.iter().enumerate() {
            if o.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: o.len() });
            }
            if o.iter().all(|&c| c == 0) {
                return Err(Error::InvalidNeighborhood("zero offset".into()));
            }
            if offsets[..i].contains(o) {
                return Err(Error::InvalidNeighborhood(format!("duplicate offset {o:?}")));
            }
            let neg: Vec<i64> = o.iter().map(|c| -c).collect();
            if !offsets.contains(&neg) {
                return Err(Error::InvalidNeighborhood(format!("offset {o:?} has no negation")));
            }
        }
        Ok(Neighborhood { dim, offsets })
    }

    /// The 8 points at l∞ distance 1.
    pub fn moore8() -> Self {
        let mut offsets = Vec::with_capacity(8);
        for dy in -1..=1 {
            for dx in -1..=1 {
                if dx != 0 || dy != 0 {
                    offsets.push(vec![dx, dy]);
                }
            }
        }
        Neighborhood { dim: 2, offsets }
    }

    pub fn von_neumann4() -> Self {
        Self::unit(2)
    }

    /// Eisenstein units ±1, ±ρ, ±ρ² in (a, b) coordinates.
    pub fn tri6() -> Self {
        let offsets = vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1], vec![1, 1], vec![-1, -1]];
        Neighborhood { dim: 2, offsets }
    }

    /// ±e_1, ..., ±e_k.
    pub fn unit(k: usize) -> Self {
        let mut offsets = Vec::with_capacity(2 * k);
        for i in 0..k {
            for s in [1, -1] {
                let mut v = vec![0; k];
                v[i] = s;
                offsets.push(v);
            }
        }
        Neighborhood { dim: k, offsets }
    }

    /// Parses `moore8`, `vn4`, `tri6` or `unit:k`.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "moore8" | "moore" => Ok(Self::moore8()),
            "vn4" | "vonneumann4" => Ok(Self::von_neumann4()),
            "tri6" => Ok(Self::tri6()),
            _ => {
                let k = name
                    .strip_prefix("unit:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| Error::InvalidNeighborhood(format!("unknown neighborhood `{name}`")))?;
                Ok(Self::unit(k))
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn offsets(&self) -> &[Vec<i64>] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }
}

pub(crate) fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() {
        return Err(Error::InvalidDims("no dimensions".into()));
    }
    let mut vol: usize = 1;
    for &d in dims {
        if d == 0 {
            return Err(Error::InvalidDims("zero modulus".into()));
        }
        vol = vol
            .checked_mul(d)
            .filter(|&v| v <= MAX_VOLUME)
            .ok_or_else(|| Error::InvalidDims(format!("volume exceeds {MAX_VOLUME}")))?;
    }
    Ok(vol)
}

/// Linear index with x₁ varying fastest (row-major in the 2-D picture).
pub(crate) fn index_of(dims: &[usize], coords: &[i64]) -> usize {
    let mut idx = 0;
    let mut stride = 1;
    for (&c, &d) in coords.iter().zip(dims) {
        idx += c.rem_euclid(d as i64) as usize * stride;
        stride *= d;
    }
    idx
}

pub(crate) fn coords_of(dims: &[usize], mut idx: usize) -> Vec<i64> {
    dims.iter()
        .map(|&d| {
            let c = idx % d;
            idx /= d;
            c as i64
        })
        .collect()
}

/// `table[i * s + j]` is the index of cell `i` shifted by offset `j`.
pub(crate) fn neighbor_table(dims: &[usize], offsets: &[Vec<i64>]) -> Vec<usize> {
    let vol: usize = dims.iter().product();
    let mut table = Vec::with_capacity(vol * offsets.len());
    let mut shifted = vec![0i64; dims.len()];
    for i in 0..vol {
        let c = coords_of(dims, i);
        for o in offsets {
            for (k, s) in shifted.iter_mut().enumerate() {
                *s = c[k] + o[k];
            }
            table.push(index_of(dims, &shifted));
        }
    }
    table
}

type CoordMap = Box<dyn Fn(&[i64]) -> Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isometry {
    Translate(Vec<i64>),
    /// Negates the given coordinate.
    Reflect(usize),
    /// Exchanges two coordinates; needs equal moduli.
    Swap(usize, usize),
    /// (x₁, x₂) ↦ (−x₂, x₁); needs a square 2-D torus.
    Rotate90,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorusPattern {
    dims: Vec<usize>,
    bits: Vec<bool>,
}

impl TorusPattern {
    pub fn empty(dims: &[usize]) -> Result<Self> {
        let vol = check_dims(dims)?;
        Ok(TorusPattern { dims: dims.to_vec(), bits: vec![false; vol] })
    }

    pub fn full(dims: &[usize]) -> Result<Self> {
        let vol = check_dims(dims)?;
        Ok(TorusPattern { dims: dims.to_vec(), bits: vec![true; vol] })
    }

    pub fn from_fn(dims: &[usize], mut f: impl FnMut(&[i64]) -> bool) -> Result<Self> {
        let vol = check_dims(dims)?;
        let bits = (0..vol).map(|i| f(&coords_of(dims, i))).collect();
        Ok(TorusPattern { dims: dims.to_vec(), bits })
    }

    /// Cells are reduced modulo `dims`; repeats collapse.
    pub fn from_cells<'a>(dims: &[usize], cells: impl IntoIterator<Item = &'a [i64]>) -> Result<Self> {
        let mut p = Self::empty(dims)?;
        for c in cells {
            p.check_dim(c.len())?;
            let i = index_of(dims, c);
            p.bits[i] = true;
        }
        Ok(p)
    }

    pub fn from_bits(dims: &[usize], bits: Vec<bool>) -> Result<Self> {
        let vol = check_dims(dims)?;
        if bits.len() != vol {
            return Err(Error::InvalidDims(format!("expected {vol} cells, got {}", bits.len())));
        }
        Ok(TorusPattern { dims: dims.to_vec(), bits })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn volume(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Number of cells in the pattern.
    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dims.len() {
            return Err(Error::DimensionMismatch { expected: self.dims.len(), found });
        }
        Ok(())
    }

    pub fn index_of(&self, coords: &[i64]) -> usize {
        index_of(&self.dims, coords)
    }

    pub fn coords_of(&self, idx: usize) -> Vec<i64> {
        coords_of(&self.dims, idx)
    }

    /// Membership after reducing `coords` modulo the torus.
    pub fn contains(&self, coords: &[i64]) -> bool {
        coords.len() == self.dims.len() && self.bits[index_of(&self.dims, coords)]
    }

    pub fn set(&mut self, coords: &[i64], value: bool) -> Result<()> {
        self.check_dim(coords.len())?;
        let i = index_of(&self.dims, coords);
        self.bits[i] = value;
        Ok(())
    }

    /// Cells in increasing linear order.
    pub fn cells(&self) -> Vec<Cell> {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| Cell(self.coords_of(i))).collect()
    }

    pub fn density(&self) -> Rational {
        from_counts(self.len(), self.volume())
    }

    pub fn neighbor_count(&self, x: &Cell, nb: &Neighborhood) -> Result<usize> {
        self.check_dim(x.dim())?;
        self.check_dim(nb.dim())?;
        let mut shifted = vec![0i64; x.dim()];
        let mut n = 0;
        for o in nb.offsets() {
            for (k, s) in shifted.iter_mut().enumerate() {
                *s = x.0[k] + o[k];
            }
            if self.contains(&shifted) {
                n += 1;
            }
        }
        Ok(n)
    }

    /// Neighbor counts at every torus position, member or not.
    pub fn neighbor_counts(&self, nb: &Neighborhood) -> Result<Vec<usize>> {
        self.check_dim(nb.dim())?;
        let s = nb.len();
        let table = neighbor_table(&self.dims, nb.offsets());
        Ok((0..self.volume()).map(|i| table[i * s..(i + 1) * s].iter().filter(|&&j| self.bits[j]).count()).collect())
    }

    /// Maximum neighbor count over the pattern's cells; 0 when empty.
    pub fn max_degree(&self, nb: &Neighborhood) -> Result<usize> {
        let counts = self.neighbor_counts(nb)?;
        Ok(counts.iter().zip(&self.bits).filter(|(_, &b)| b).map(|(&c, _)| c).max().unwrap_or(0))
    }

    pub fn complement(&self) -> Self {
        TorusPattern { dims: self.dims.clone(), bits: self.bits.iter().map(|b| !b).collect() }
    }

    /// Repeats the pattern `m` times along every axis.
    pub fn tile(&self, m: usize) -> Result<Self> {
        let dims: Vec<usize> = self.dims.iter().map(|d| d * m).collect();
        self.tile_to(&dims)
    }

    /// Re-expresses the pattern on a torus whose moduli are multiples of ours.
    pub fn tile_to(&self, dims: &[usize]) -> Result<Self> {
        self.check_dim(dims.len())?;
        if dims.iter().zip(&self.dims).any(|(&big, &d)| big == 0 || big % d != 0) {
            return Err(Error::InvalidDims(format!("{dims:?} is not a multiple of {:?}", self.dims)));
        }
        Self::from_fn(dims, |c| self.contains(c))
    }

    pub fn apply(&self, iso: &Isometry) -> Result<Self> {
        let k = self.dim();
        let map: CoordMap = match iso {
            Isometry::Translate(v) => {
                self.check_dim(v.len())?;
                let v = v.clone();
                Box::new(move |c| c.iter().zip(&v).map(|(a, b)| a + b).collect())
            }
            Isometry::Reflect(axis) => {
                if *axis >= k {
                    return Err(Error::IncompatibleIsometry(format!("axis {axis} out of range")));
                }
                let axis = *axis;
                Box::new(move |c| {
                    let mut c = c.to_vec();
                    c[axis] = -c[axis];
                    c
                })
            }
            Isometry::Swap(i, j) => {
                if *i >= k || *j >= k || self.dims[*i] != self.dims[*j] {
                    return Err(Error::IncompatibleIsometry(format!(
                        "cannot swap axes {i} and {j} of {:?}",
                        self.dims
                    )));
                }
                let (i, j) = (*i, *j);
                Box::new(move |c| {
                    let mut c = c.to_vec();
                    c.swap(i, j);
                    c
                })
            }
            Isometry::Rotate90 => {
                if k != 2 || self.dims[0] != self.dims[1] {
                    return Err(Error::IncompatibleIsometry("rotation needs a square 2-D torus".into()));
                }
                Box::new(|c| vec![-c[1], c[0]])
            }
        };
        let mut out = Self::empty(&self.dims)?;
        for (i, &b) in self.bits.iter().enumerate() {
            if b {
                let j = index_of(&self.dims, &map(&self.coords_of(i)));
                out.bits[j] = true;
            }
        }
        Ok(out)
    }

    pub fn translate(&self, v: &[i64]) -> Result<Self> {
        self.apply(&Isometry::Translate(v.to_vec()))
    }

    pub fn reflect(&self, axis: usize) -> Result<Self> {
        self.apply(&Isometry::Reflect(axis))
    }

    pub fn rotate90(&self) -> Result<Self> {
        self.apply(&Isometry::Rotate90)
    }
}

impl fmt::Debug for TorusPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 2 {
            writeln!(f, "TorusPattern {}x{}", self.dims[0], self.dims[1])?;
            for row in self.bits.chunks(self.dims[0]) {
                let s: String = row.iter().map(|&b| if b { '#' } else { '.' }).collect();
                writeln!(f, "{s}")?;
            }
            Ok(())
        } else {
            f.debug_struct("TorusPattern").field("dims", &self.dims).field("cells", &self.cells()).finish()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn stripes(w: usize, h: usize) -> TorusPattern {
        TorusPattern::from_fn(&[w, h], |c| c[0] % 2 == 0).unwrap()
    }

    #[test]
    fn neighborhood_validation() {
        assert!(Neighborhood::new(2, vec![vec![0, 0]]).is_err());
        assert!(Neighborhood::new(2, vec![vec![1, 0]]).is_err());
        assert!(Neighborhood::new(2, vec![vec![1, 0], vec![-1, 0], vec![1, 0]]).is_err());
        assert!(Neighborhood::new(2, vec![vec![1, 0, 0]]).is_err());
        assert!(Neighborhood::new(1, vec![vec![2], vec![-2]]).is_ok());
        for nb in [Neighborhood::moore8(), Neighborhood::von_neumann4(), Neighborhood::tri6(), Neighborhood::unit(5)] {
            assert_eq!(Neighborhood::new(nb.dim(), nb.offsets().to_vec()).unwrap(), nb);
        }
        assert_eq!(Neighborhood::by_name("unit:3").unwrap().len(), 6);
        assert!(Neighborhood::by_name("unit:0").is_err());
        assert!(Neighborhood::by_name("hex").is_err());
    }

    #[test]
    fn counts_on_examples() {
        let m = Neighborhood::moore8();
        let s = stripes(4, 4);
        assert_eq!(s.neighbor_count(&Cell::from((0, 0)), &m).unwrap(), 2);
        assert_eq!(s.max_degree(&m).unwrap(), 2);
        assert_eq!(s.density(), ratio(1, 2));

        let full = TorusPattern::full(&[3, 3]).unwrap();
        assert_eq!(full.neighbor_count(&Cell::from((1, 2)), &m).unwrap(), 8);

        let block =
            TorusPattern::from_cells(&[5, 5], [[0i64, 0], [0, 1], [1, 0], [1, 1]].iter().map(|c| &c[..])).unwrap();
        assert_eq!(block.neighbor_count(&Cell::from((0, 0)), &m).unwrap(), 3);
    }

    #[test]
    fn small_torus_counts_per_offset() {
        // On a 1x1 torus every offset lands on the single cell.
        let one = TorusPattern::full(&[1, 1]).unwrap();
        assert_eq!(one.max_degree(&Neighborhood::moore8()).unwrap(), 8);
        let two = stripes(2, 2);
        assert_eq!(two.max_degree(&Neighborhood::moore8()).unwrap(), 2);
    }

    #[test]
    fn record_patterns() {
        let m = Neighborhood::moore8();
        let p = TorusPattern::from_fn(&[5, 5], |c| (c[0] + 2 * c[1]).rem_euclid(5) >= 2).unwrap();
        assert_eq!(p.max_degree(&m).unwrap(), 4);
        let q = TorusPattern::from_fn(&[13, 13], |c| {
            let r = (2 * c[0] + 3 * c[1]).rem_euclid(13);
            ![1, 12, 5, 8].contains(&r)
        })
        .unwrap();
        assert_eq!(q.max_degree(&m).unwrap(), 5);
        assert_eq!(q.density(), ratio(9, 13));
    }

    #[test]
    fn empty_conventions() {
        let e = TorusPattern::empty(&[3, 4]).unwrap();
        assert_eq!(e.density(), ratio(0, 1));
        assert_eq!(e.max_degree(&Neighborhood::moore8()).unwrap(), 0);
    }

    #[test]
    fn dimension_errors() {
        let s = stripes(4, 4);
        assert!(s.neighbor_count(&Cell::from([0, 0, 0]), &Neighborhood::moore8()).is_err());
        assert!(s.max_degree(&Neighborhood::unit(3)).is_err());
        assert!(TorusPattern::empty(&[]).is_err());
        assert!(TorusPattern::empty(&[3, 0]).is_err());
    }

    #[test]
    fn isometries() {
        let s = stripes(4, 4);
        let t = s.translate(&[1, 0]).unwrap();
        assert!(t.contains(&[1, 0]) && !t.contains(&[0, 0]));
        assert_eq!(t.density(), ratio(1, 2));

        let cb = TorusPattern::from_fn(&[4, 4], |c| (c[0] - c[1]).rem_euclid(2) == 0).unwrap();
        assert_eq!(cb.rotate90().unwrap(), cb);

        let p = TorusPattern::from_fn(&[5, 5], |c| (c[0] + 2 * c[1]).rem_euclid(5) != 0).unwrap();
        let r = p.reflect(1).unwrap();
        let expect = TorusPattern::from_fn(&[5, 5], |c| (c[0] - 2 * c[1]).rem_euclid(5) != 0).unwrap();
        assert_eq!(r, expect);
        assert_eq!(r.density(), ratio(4, 5));

        assert!(TorusPattern::empty(&[4, 5]).unwrap().rotate90().is_err());
        assert!(TorusPattern::empty(&[4, 5]).unwrap().apply(&Isometry::Swap(0, 1)).is_err());
    }

    #[test]
    fn tiling() {
        let s = stripes(2, 1);
        let t = s.tile_to(&[6, 3]).unwrap();
        assert_eq!(t, stripes(6, 3));
        assert!(s.tile_to(&[5, 3]).is_err());
    }
}
