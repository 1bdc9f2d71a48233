//! Local constraints, the Life map, still lifes and oscillators.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lattice::{neighbor_table, Cell, Neighborhood, TorusPattern};
use crate::rational::{from_counts, Rational};

/// Finite-support weights on nonzero offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    dim: usize,
    terms: Vec<(Vec<i64>, Rational)>,
}

impl WeightFunction {
    pub fn new(dim: usize, terms: Vec<(Vec<i64>, Rational)>) -> Result<Self> {
        for (i, (o, _)) in terms.iter().enumerate() {
            if o.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: o.len() });
            }
            if o.iter().all(|&c| c == 0) {
                return Err(Error::InvalidConstraint("weight on the zero offset".into()));
            }
            if terms[..i].iter().any(|(p, _)| p == o) {
                return Err(Error::InvalidConstraint(format!("offset {o:?} listed twice")));
            }
        }
        Ok(WeightFunction { dim, terms })
    }

    /// The same weight on every offset of `nb`.
    pub fn uniform(nb: &Neighborhood, value: Rational) -> Self {
        let terms = nb.offsets().iter().map(|o| (o.clone(), value.clone())).collect();
        WeightFunction { dim: nb.dim(), terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(Vec<i64>, Rational)] {
        &self.terms
    }
}

/// Allowed neighborhoods: sets of nonzero offsets in the l∞ ball of radius `r`.
/// The zero offset is never part of a member; membership of x itself is
/// implied because constraints are only checked at cells of the pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSetFamily {
    dim: usize,
    radius: u32,
    members: BTreeSet<Vec<Vec<i64>>>,
}

impl LocalSetFamily {
    pub fn new(dim: usize, radius: u32, members: impl IntoIterator<Item = Vec<Vec<i64>>>) -> Result<Self> {
        if radius == 0 {
            return Err(Error::InvalidConstraint("radius must be positive".into()));
        }
        let mut set = BTreeSet::new();
        for mut m in members {
            for o in &m {
                if o.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: o.len() });
                }
                let linf = o.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0);
                if linf == 0 || linf > radius as u64 {
                    return Err(Error::InvalidConstraint(format!(
                        "offset {o:?} not in the punctured ball of radius {radius}"
                    )));
                }
            }
            m.sort();
            m.dedup();
            set.insert(m);
        }
        Ok(LocalSetFamily { dim, radius, members: set })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn members(&self) -> &BTreeSet<Vec<Vec<i64>>> {
        &self.members
    }

    pub fn contains(&self, sorted_offsets: &[Vec<i64>]) -> bool {
        self.members.contains(sorted_offsets)
    }
}

/// Nonzero offsets with l∞ norm at most `r`, in lexicographic order.
pub fn punctured_ball(dim: usize, r: u32) -> Vec<Vec<i64>> {
    let r = r as i64;
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-r..=r).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&c| c != 0));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    MaxDegree { nb: Neighborhood, n: usize },
    WeightBound { weights: WeightFunction, c: Rational },
    AllowedLocalSets(LocalSetFamily),
}

impl Constraint {
    pub fn max_degree(nb: Neighborhood, n: usize) -> Self {
        Constraint::MaxDegree { nb, n }
    }

    pub fn dim(&self) -> usize {
        match self {
            Constraint::MaxDegree { nb, .. } => nb.dim(),
            Constraint::WeightBound { weights, .. } => weights.dim(),
            Constraint::AllowedLocalSets(f) => f.dim(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    Degree(usize),
    Weight(Rational),
    LocalSet(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub cell: Cell,
    pub kind: ViolationKind,
}

/// Returns the first violating cell in linear order, or `None` when `p`
/// satisfies `con` at every one of its cells.
pub fn satisfies(p: &TorusPattern, con: &Constraint) -> Result<Option<Violation>> {
    if con.dim() != p.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: con.dim() });
    }
    let bits = p.bits();
    match con {
        Constraint::MaxDegree { nb, n } => {
            let counts = p.neighbor_counts(nb)?;
            Ok((0..p.volume())
                .find(|&i| bits[i] && counts[i] > *n)
                .map(|i| Violation { cell: Cell::new(p.coords_of(i)), kind: ViolationKind::Degree(counts[i]) }))
        }
        Constraint::WeightBound { weights, c } => {
            let offsets: Vec<Vec<i64>> = weights.terms().iter().map(|(o, _)| o.clone()).collect();
            let s = offsets.len();
            let table = neighbor_table(p.dims(), &offsets);
            for i in (0..p.volume()).filter(|&i| bits[i]) {
                let mut sum = Rational::default();
                for (j, (_, w)) in weights.terms().iter().enumerate() {
                    if bits[table[i * s + j]] {
                        sum += w;
                    }
                }
                if &sum > c {
                    return Ok(Some(Violation { cell: Cell::new(p.coords_of(i)), kind: ViolationKind::Weight(sum) }));
                }
            }
            Ok(None)
        }
        Constraint::AllowedLocalSets(family) => {
            let ball = punctured_ball(family.dim(), family.radius());
            let s = ball.len();
            let table = neighbor_table(p.dims(), &ball);
            for i in (0..p.volume()).filter(|&i| bits[i]) {
                let present: Vec<Vec<i64>> =
                    (0..s).filter(|&j| bits[table[i * s + j]]).map(|j| ball[j].clone()).collect();
                if !family.contains(&present) {
                    return Ok(Some(Violation {
                        cell: Cell::new(p.coords_of(i)),
                        kind: ViolationKind::LocalSet(present),
                    }));
                }
            }
            Ok(None)
        }
    }
}

fn require_planar(p: &TorusPattern) -> Result<()> {
    if p.dim() != 2 {
        return Err(Error::NotPlanar);
    }
    Ok(())
}

/// One step of Conway's Life on the torus.
pub fn life_step(p: &TorusPattern) -> Result<TorusPattern> {
    require_planar(p)?;
    let counts = p.neighbor_counts(&Neighborhood::moore8())?;
    let bits = p.bits().iter().zip(&counts).map(|(&alive, &n)| n == 3 || (alive && n == 2)).collect();
    TorusPattern::from_bits(p.dims(), bits)
}

/// Violators of the three still-life conditions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StillLifeReport {
    /// Empty cells with exactly 3 live neighbors.
    pub births: Vec<Cell>,
    /// Live cells with fewer than 2 live neighbors.
    pub lonely: Vec<Cell>,
    /// Live cells with more than 3 live neighbors.
    pub crowded: Vec<Cell>,
}

impl StillLifeReport {
    pub fn cond1(&self) -> bool {
        self.births.is_empty()
    }

    pub fn cond2(&self) -> bool {
        self.lonely.is_empty()
    }

    pub fn cond3(&self) -> bool {
        self.crowded.is_empty()
    }

    pub fn is_still_life(&self) -> bool {
        self.cond1() && self.cond2() && self.cond3()
    }

    fn record(&mut self, cell: Cell, alive: bool, n: usize) {
        match (alive, n) {
            (false, 3) => self.births.push(cell),
            (true, 0 | 1) => self.lonely.push(cell),
            (true, n) if n > 3 => self.crowded.push(cell),
            _ => {}
        }
    }
}

pub fn still_life_report(p: &TorusPattern) -> Result<StillLifeReport> {
    require_planar(p)?;
    let counts = p.neighbor_counts(&Neighborhood::moore8())?;
    let mut report = StillLifeReport::default();
    for (i, (&alive, &n)) in p.bits().iter().zip(&counts).enumerate() {
        report.record(Cell::new(p.coords_of(i)), alive, n);
    }
    Ok(report)
}

pub fn is_still_life(p: &TorusPattern) -> Result<bool> {
    Ok(still_life_report(p)?.is_still_life())
}

/// Iterates λ and returns the least p* ≤ `max_steps` with λ^p*(p) = p.
pub fn oscillator_period(p: &TorusPattern, max_steps: usize) -> Result<Option<usize>> {
    require_planar(p)?;
    let mut q = p.clone();
    for step in 1..=max_steps {
        q = life_step(&q)?;
        if &q == p {
            return Ok(Some(step));
        }
    }
    Ok(None)
}

/// The phases p, λp, ..., λ^(p*-1)p.
pub fn oscillator_phases(p: &TorusPattern, max_steps: usize) -> Result<Vec<TorusPattern>> {
    let period = oscillator_period(p, max_steps)?.ok_or(Error::NotOscillator(max_steps))?;
    let mut phases = Vec::with_capacity(period);
    let mut q = p.clone();
    for _ in 0..period {
        let next = life_step(&q)?;
        phases.push(q);
        q = next;
    }
    Ok(phases)
}

pub const DEFAULT_MAX_STEPS: usize = 1000;

pub fn phase_average_density(p: &TorusPattern) -> Result<Rational> {
    phase_average_density_within(p, DEFAULT_MAX_STEPS)
}

pub fn phase_average_density_within(p: &TorusPattern, max_steps: usize) -> Result<Rational> {
    let phases = oscillator_phases(p, max_steps)?;
    let total: usize = phases.iter().map(|q| q.len()).sum();
    Ok(from_counts(total, phases.len() * p.volume()))
}

/// A finite rectangular window onto the plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGrid {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl FiniteGrid {
    pub fn new(width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidDims("grid sides must be positive".into()));
        }
        Ok(FiniteGrid { width, height, bits: vec![false; width * height] })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(i64, i64) -> bool) -> Result<Self> {
        let mut g = Self::new(width, height)?;
        for y in 0..height {
            for x in 0..width {
                g.bits[y * width + x] = f(x as i64, y as i64);
            }
        }
        Ok(g)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Membership; positions outside the window read as empty.
    pub fn get(&self, x: i64, y: i64) -> bool {
        self.in_bounds(x, y) && self.bits[y as usize * self.width + x as usize]
    }

    pub fn in_bounds(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && (x as usize) < self.width && (y as usize) < self.height
    }

    pub fn set(&mut self, x: i64, y: i64, value: bool) -> Result<()> {
        if !self.in_bounds(x, y) {
            return Err(Error::InvalidArgument(format!("({x},{y}) outside grid")));
        }
        self.bits[y as usize * self.width + x as usize] = value;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cells(&self) -> Vec<Cell> {
        (0..self.bits.len())
            .filter(|&i| self.bits[i])
            .map(|i| Cell::from(((i % self.width) as i64, (i / self.width) as i64)))
            .collect()
    }

    /// Reads the window as one period of a torus pattern.
    pub fn to_torus(&self) -> TorusPattern {
        TorusPattern::from_bits(&[self.width, self.height], self.bits.clone()).expect("grid sides are positive")
    }

    pub fn from_torus(p: &TorusPattern) -> Result<Self> {
        require_planar(p)?;
        Ok(FiniteGrid { width: p.dims()[0], height: p.dims()[1], bits: p.bits().to_vec() })
    }

    /// The sub-window with corner `(x0, y0)` and the given size.
    pub fn crop(&self, x0: usize, y0: usize, width: usize, height: usize) -> Result<Self> {
        if x0 + width > self.width || y0 + height > self.height {
            return Err(Error::InvalidArgument("crop exceeds grid".into()));
        }
        Self::from_fn(width, height, |x, y| self.get(x + x0 as i64, y + y0 as i64))
    }

    fn count(&self, x: i64, y: i64, nb: &Neighborhood) -> Option<usize> {
        let mut n = 0;
        for o in nb.offsets() {
            let (a, b) = (x + o[0], y + o[1]);
            if !self.in_bounds(a, b) {
                return None;
            }
            n += self.get(a, b) as usize;
        }
        Some(n)
    }
}

/// Checks the still-life conditions at positions whose whole Moore
/// neighborhood lies inside the window.
pub fn interior_still_life_check(g: &FiniteGrid) -> Result<StillLifeReport> {
    if g.width < 3 || g.height < 3 {
        return Err(Error::GridTooSmall(format!("{}x{}", g.width, g.height)));
    }
    let m = Neighborhood::moore8();
    let mut report = StillLifeReport::default();
    for y in 1..g.height as i64 - 1 {
        for x in 1..g.width as i64 - 1 {
            let n = g.count(x, y, &m).expect("interior position");
            report.record(Cell::from((x, y)), g.get(x, y), n);
        }
    }
    Ok(report)
}

/// Maximum degree over cells whose full neighborhood lies inside the window,
/// or `None` when no cell qualifies.
pub fn interior_max_degree(g: &FiniteGrid, nb: &Neighborhood) -> Result<Option<usize>> {
    if nb.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: nb.dim() });
    }
    let mut best = None;
    for c in g.cells() {
        if let Some(n) = g.count(c.x(), c.y(), nb) {
            best = best.max(Some(n));
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn cells(dims: &[usize], cs: &[[i64; 2]]) -> TorusPattern {
        TorusPattern::from_cells(dims, cs.iter().map(|c| &c[..])).unwrap()
    }

    fn stripes() -> TorusPattern {
        TorusPattern::from_fn(&[4, 4], |c| c[0] % 2 == 0).unwrap()
    }

    #[test]
    fn satisfies_examples() {
        let m = Neighborhood::moore8();
        assert_eq!(satisfies(&stripes(), &Constraint::max_degree(m.clone(), 3)).unwrap(), None);
        let full = TorusPattern::full(&[3, 3]).unwrap();
        let v = satisfies(&full, &Constraint::max_degree(m.clone(), 7)).unwrap().unwrap();
        assert_eq!(v.cell, Cell::from((0, 0)));
        assert_eq!(v.kind, ViolationKind::Degree(8));
        let w = Constraint::WeightBound { weights: WeightFunction::uniform(&m, int(1)), c: int(2) };
        assert_eq!(satisfies(&stripes(), &w).unwrap(), None);
    }

    #[test]
    fn weight_function_validation() {
        assert!(WeightFunction::new(2, vec![(vec![0, 0], int(1))]).is_err());
        assert!(WeightFunction::new(2, vec![(vec![1, 0], int(1)), (vec![1, 0], int(2))]).is_err());
        assert!(WeightFunction::new(2, vec![(vec![1, 0], int(-1))]).is_ok());
    }

    #[test]
    fn local_sets() {
        // Allow only "no neighbor" or "exactly the right neighbor".
        let fam = LocalSetFamily::new(2, 1, [vec![], vec![vec![1, 0]], vec![vec![-1, 0]]]).unwrap();
        let con = Constraint::AllowedLocalSets(fam);
        let domino = cells(&[4, 4], &[[0, 0], [1, 0]]);
        assert_eq!(satisfies(&domino, &con).unwrap(), None);
        let tri = cells(&[4, 4], &[[0, 0], [1, 0], [2, 0]]);
        let v = satisfies(&tri, &con).unwrap().unwrap();
        assert_eq!(v.cell, Cell::from((1, 0)));
        assert!(LocalSetFamily::new(2, 1, [vec![vec![0, 0]]]).is_err());
        assert!(LocalSetFamily::new(2, 1, [vec![vec![2, 0]]]).is_err());
        assert_eq!(punctured_ball(2, 1).len(), 8);
        assert_eq!(punctured_ball(3, 2).len(), 124);
    }

    #[test]
    fn life_examples() {
        let empty = TorusPattern::empty(&[5, 5]).unwrap();
        assert_eq!(life_step(&empty).unwrap(), empty);
        let full = TorusPattern::full(&[5, 5]).unwrap();
        assert_eq!(life_step(&full).unwrap(), empty);
        let blinker = cells(&[5, 5], &[[-1, 0], [0, 0], [1, 0]]);
        let vertical = cells(&[5, 5], &[[0, -1], [0, 0], [0, 1]]);
        assert_eq!(life_step(&blinker).unwrap(), vertical);
        assert!(life_step(&TorusPattern::empty(&[3]).unwrap()).is_err());
    }

    #[test]
    fn still_life_examples() {
        let block = cells(&[5, 5], &[[0, 0], [0, 1], [1, 0], [1, 1]]);
        assert!(still_life_report(&block).unwrap().is_still_life());
        assert!(still_life_report(&stripes()).unwrap().is_still_life());
        let blinker = cells(&[5, 5], &[[-1, 0], [0, 0], [1, 0]]);
        let r = still_life_report(&blinker).unwrap();
        assert!(!r.cond1());
        assert!(r.births.contains(&Cell::from((0, 1))));
        assert!(r.births.contains(&Cell::from((0, 4))));
        assert!(!r.cond2() && r.cond3());
    }

    #[test]
    fn oscillators() {
        let block = cells(&[5, 5], &[[0, 0], [0, 1], [1, 0], [1, 1]]);
        assert_eq!(oscillator_period(&block, 1).unwrap(), Some(1));
        assert_eq!(phase_average_density(&block).unwrap(), ratio(4, 25));
        let blinker = cells(&[5, 5], &[[-1, 0], [0, 0], [1, 0]]);
        assert_eq!(oscillator_period(&blinker, 1).unwrap(), None);
        assert_eq!(oscillator_period(&blinker, 5).unwrap(), Some(2));
        let vb = TorusPattern::from_fn(&[8, 4], |c| c[0].rem_euclid(4) < 2).unwrap();
        assert_eq!(oscillator_period(&vb, 10).unwrap(), Some(2));
        assert_eq!(phase_average_density(&vb).unwrap(), ratio(1, 2));
        // A glider never returns to its starting phase on this torus in 3 steps.
        let glider = cells(&[6, 6], &[[1, 0], [2, 1], [0, 2], [1, 2], [2, 2]]);
        assert!(phase_average_density_within(&glider, 3).is_err());
    }

    #[test]
    fn grids() {
        let g = FiniteGrid::from_fn(5, 5, |x, y| x == 2 && y == 2).unwrap();
        let r = interior_still_life_check(&g).unwrap();
        assert_eq!(r.lonely, vec![Cell::from((2, 2))]);
        assert!(interior_still_life_check(&FiniteGrid::new(2, 5).unwrap()).is_err());
        let s = FiniteGrid::from_torus(&stripes()).unwrap();
        assert!(interior_still_life_check(&s).unwrap().is_still_life());
        assert_eq!(interior_max_degree(&s, &Neighborhood::moore8()).unwrap(), Some(2));
        assert_eq!(s.to_torus(), stripes());
        assert_eq!(s.crop(1, 1, 2, 2).unwrap().len(), 2);
    }
}
