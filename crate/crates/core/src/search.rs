//! Exact extremal search on small tori and boxes.
//!
//! Degree-type constraints (every chosen item has weighted neighbor sum at
//! most a cap, with nonnegative coefficients) are hereditary, and are solved
//! by Russian-doll search: items are processed from last to first, and the
//! optimum over each suffix bounds the search over longer suffixes. Other
//! constraints fall back to a depth-first search that checks feasibility at
//! every node.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::bounds::bound_suite;
use crate::constructions;
use crate::error::{Error, Result};
use crate::lattice::{check_dims, coords_of, index_of, neighbor_table, Cell, Neighborhood, TorusPattern};
use crate::rational::{common_denominator, from_counts, Rational};
use crate::rules::{satisfies, Constraint};

pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult<W> {
    pub best_value: Rational,
    pub witness: W,
    pub nodes_explored: u64,
    pub proven_optimal: bool,
}

/// Items with weights; choosing item `j` adds `c` to the load of `i` for
/// every `(i, c)` in `affects[j]`. A set is feasible when every chosen
/// item's load is at most `cap`.
#[derive(Debug, Clone)]
pub(crate) struct DegreeProblem {
    pub weight: Vec<u64>,
    pub affects: Vec<Vec<(usize, u64)>>,
    pub cap: u64,
}

impl DegreeProblem {
    fn len(&self) -> usize {
        self.weight.len()
    }

    /// Unit loads from a neighbor table on a torus.
    fn torus(dims: &[usize], nb: &Neighborhood, n: usize) -> Self {
        let vol: usize = dims.iter().product();
        let s = nb.len();
        let table = neighbor_table(dims, nb.offsets());
        let mut affects: Vec<HashMap<usize, u64>> = vec![HashMap::new(); vol];
        // Cell i counts j when j = i + o, so choosing j loads i.
        for i in 0..vol {
            for &j in &table[i * s..(i + 1) * s] {
                *affects[j].entry(i).or_default() += 1;
            }
        }
        DegreeProblem { weight: vec![1; vol], affects: sorted(affects), cap: n as u64 }
    }
}

fn sorted(maps: Vec<HashMap<usize, u64>>) -> Vec<Vec<(usize, u64)>> {
    maps.into_iter()
        .map(|m| {
            let mut v: Vec<_> = m.into_iter().collect();
            v.sort_unstable();
            v
        })
        .collect()
}

struct State<'a> {
    prob: &'a DegreeProblem,
    load: Vec<u64>,
    chosen: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl<'a> State<'a> {
    fn new(prob: &'a DegreeProblem, budget: u64) -> Self {
        let n = prob.len();
        State { prob, load: vec![0; n], chosen: vec![false; n], nodes: 0, budget }
    }

    fn try_add(&mut self, j: usize) -> bool {
        self.chosen[j] = true;
        for &(i, c) in &self.prob.affects[j] {
            self.load[i] += c;
        }
        let cap = self.prob.cap;
        let ok =
            self.load[j] <= cap && self.prob.affects[j].iter().all(|&(i, _)| !self.chosen[i] || self.load[i] <= cap);
        if !ok {
            self.remove(j);
        }
        ok
    }

    fn remove(&mut self, j: usize) {
        self.chosen[j] = false;
        for &(i, c) in &self.prob.affects[j] {
            self.load[i] -= c;
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.budget
    }
}

struct Incumbent {
    value: u64,
    set: Vec<bool>,
    stop: u64,
}

/// Branches on items `i..`; `bound[j]` bounds the weight obtainable from
/// items `j..`. `accept` filters which visited sets may become incumbent.
/// Returns false when the budget runs out.
fn branch(
    st: &mut State,
    i: usize,
    current: u64,
    bound: &[u64],
    inc: &mut Incumbent,
    accept: &dyn Fn(&State) -> bool,
) -> bool {
    if !st.tick() {
        return false;
    }
    if current > inc.value && accept(st) {
        inc.value = current;
        inc.set.clone_from(&st.chosen);
    }
    for j in i..st.prob.len() {
        if inc.value >= inc.stop || current + bound[j] <= inc.value {
            return true;
        }
        let w = st.prob.weight[j];
        if w == 0 || !st.try_add(j) {
            continue;
        }
        let ok = branch(st, j + 1, current + w, bound, inc, accept);
        st.remove(j);
        if !ok {
            return false;
        }
    }
    true
}

pub(crate) struct Solved {
    pub value: u64,
    pub set: Vec<bool>,
    pub nodes: u64,
    pub complete: bool,
    /// `suffix[k]` is the optimum over items `k..`; valid when complete.
    pub suffix: Vec<u64>,
}

/// Russian-doll search. `upper` is a known bound on the optimum and
/// `warm` a known feasible set.
pub(crate) fn russian_doll(prob: &DegreeProblem, budget: u64, upper: Option<u64>, warm: Option<Vec<bool>>) -> Solved {
    let n = prob.len();
    let mut st = State::new(prob, budget);
    let mut suffix = vec![0u64; n + 1];
    let mut best_set = vec![false; n];
    let upper = upper.unwrap_or(u64::MAX);
    let always = |_: &State| true;
    let warm_value = |w: &Vec<bool>| (0..n).filter(|&i| w[i]).map(|i| prob.weight[i]).sum::<u64>();
    for k in (0..n).rev() {
        let prev = suffix[k + 1];
        if prev >= upper {
            suffix[k] = prev;
            continue;
        }
        let mut inc = Incumbent { value: prev, set: best_set.clone(), stop: 0 };
        if k == 0 {
            if let Some(w) = &warm {
                let v = warm_value(w);
                if v > inc.value {
                    inc.value = v;
                    inc.set = w.clone();
                }
            }
        }
        let wk = prob.weight[k];
        inc.stop = (prev + wk).min(upper);
        if wk > 0 && inc.value < inc.stop && st.try_add(k) {
            let ok = branch(&mut st, k + 1, wk, &suffix, &mut inc, &always);
            st.remove(k);
            if !ok {
                // The warm start is feasible for the whole problem even if
                // the search never reached the outermost doll.
                if let Some(w) = warm.filter(|w| warm_value(w) > inc.value) {
                    inc.value = warm_value(&w);
                    inc.set = w;
                }
                return Solved { value: inc.value, set: inc.set, nodes: st.nodes, complete: false, suffix };
            }
        }
        suffix[k] = inc.value;
        best_set = inc.set;
    }
    if n == 0 {
        suffix[0] = 0;
    }
    Solved { value: suffix[0], set: best_set, nodes: st.nodes, complete: true, suffix }
}

/// All sets of positive-weight items reaching `target`, up to `limit` sets.
/// Returns the sets and whether the enumeration finished.
pub(crate) fn enumerate_sets(
    prob: &DegreeProblem,
    suffix: &[u64],
    target: u64,
    limit: usize,
    budget: u64,
) -> (Vec<Vec<bool>>, bool) {
    fn rec(
        st: &mut State,
        i: usize,
        current: u64,
        suffix: &[u64],
        target: u64,
        limit: usize,
        out: &mut Vec<Vec<bool>>,
    ) -> bool {
        if !st.tick() {
            return false;
        }
        if current == target {
            if out.len() >= limit {
                return false;
            }
            out.push(st.chosen.clone());
            return true;
        }
        for j in i..st.prob.len() {
            if current + suffix[j] < target {
                return true;
            }
            let w = st.prob.weight[j];
            if w == 0 || !st.try_add(j) {
                continue;
            }
            let ok = rec(st, j + 1, current + w, suffix, target, limit, out);
            st.remove(j);
            if !ok {
                return false;
            }
        }
        true
    }
    let mut st = State::new(prob, budget);
    let mut out = Vec::new();
    let done = rec(&mut st, 0, 0, suffix, target, limit, &mut out);
    (out, done)
}

fn to_u64(v: &BigInt) -> Result<u64> {
    v.to_u64().ok_or_else(|| Error::ResourceLimit(format!("scaled weight {v} exceeds 64 bits")))
}

/// A hereditary reformulation of `con` on the torus, if one exists.
fn degree_problem(dims: &[usize], con: &Constraint) -> Result<Option<DegreeProblem>> {
    match con {
        Constraint::MaxDegree { nb, n } => Ok(Some(DegreeProblem::torus(dims, nb, *n))),
        Constraint::WeightBound { weights, c } => {
            if weights.terms().iter().any(|(_, w)| w.is_negative()) {
                return Ok(None);
            }
            if c.is_negative() {
                // No cell may be chosen at all.
                let vol: usize = dims.iter().product();
                let affects = (0..vol).map(|j| vec![(j, 1)]).collect();
                return Ok(Some(DegreeProblem { weight: vec![1; vol], affects, cap: 0 }));
            }
            let scale = common_denominator(weights.terms().iter().map(|(_, w)| w).chain([c]));
            let cap = (c * Rational::from_integer(scale.clone())).floor().to_integer();
            let offsets: Vec<Vec<i64>> = weights.terms().iter().map(|(o, _)| o.clone()).collect();
            let coef: Vec<u64> = weights
                .terms()
                .iter()
                .map(|(_, w)| to_u64(&(w * Rational::from_integer(scale.clone())).to_integer()))
                .collect::<Result<_>>()?;
            let vol: usize = dims.iter().product();
            let s = offsets.len();
            let table = neighbor_table(dims, &offsets);
            let mut affects: Vec<HashMap<usize, u64>> = vec![HashMap::new(); vol];
            for i in 0..vol {
                for k in 0..s {
                    if coef[k] > 0 {
                        *affects[table[i * s + k]].entry(i).or_default() += coef[k];
                    }
                }
            }
            Ok(Some(DegreeProblem { weight: vec![1; vol], affects: sorted(affects), cap: to_u64(&cap)? }))
        }
        Constraint::AllowedLocalSets(_) => Ok(None),
    }
}

fn analytic_cap(dims: &[usize], con: &Constraint) -> Option<u64> {
    let Constraint::MaxDegree { nb, n } = con else { return None };
    let vol: usize = dims.iter().product();
    let b = bound_suite(nb, *n).bound;
    (b * Rational::from_integer(BigInt::from(vol))).floor().to_integer().to_u64()
}

fn warm_start(dims: &[usize], con: &Constraint) -> Option<Vec<bool>> {
    let Constraint::MaxDegree { nb, n } = con else { return None };
    let mut best: Option<TorusPattern> = None;
    for c in constructions::registry() {
        if &c.neighborhood != nb || c.expected_degree > *n || c.expected_period.is_some() {
            continue;
        }
        let Ok(p) = constructions::generate(&c.name, &c.params) else { continue };
        if p.dim() != dims.len() {
            continue;
        }
        let Ok(t) = p.tile_to(dims) else { continue };
        if best.as_ref().is_none_or(|b| t.len() > b.len()) {
            best = Some(t);
        }
    }
    best.map(|p| p.bits().to_vec())
}

/// Plain depth-first search for constraints that are not hereditary.
fn exhaustive(dims: &[usize], con: &Constraint, budget: u64) -> Result<(u64, Vec<bool>, u64, bool)> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        dims: &[usize],
        con: &Constraint,
        bits: &mut Vec<bool>,
        i: usize,
        current: u64,
        best: &mut (u64, Vec<bool>),
        nodes: &mut u64,
        budget: u64,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > budget {
            return Ok(false);
        }
        if current > best.0 {
            let p = TorusPattern::from_bits(dims, bits.clone())?;
            if satisfies(&p, con)?.is_none() {
                *best = (current, bits.clone());
            }
        }
        let n = bits.len();
        for j in i..n {
            if current + (n - j) as u64 <= best.0 {
                return Ok(true);
            }
            bits[j] = true;
            let ok = rec(dims, con, bits, j + 1, current + 1, best, nodes, budget)?;
            bits[j] = false;
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
    let vol = check_dims(dims)?;
    let mut best = (0, vec![false; vol]);
    let mut nodes = 0;
    let mut bits = vec![false; vol];
    let done = rec(dims, con, &mut bits, 0, 0, &mut best, &mut nodes, budget)?;
    Ok((best.0, best.1, nodes, done))
}

fn density_result(dims: &[usize], bits: Vec<bool>, nodes: u64, complete: bool) -> Result<SearchResult<TorusPattern>> {
    let p = TorusPattern::from_bits(dims, bits)?;
    Ok(SearchResult {
        best_value: from_counts(p.len(), p.volume()),
        witness: p,
        nodes_explored: nodes,
        proven_optimal: complete,
    })
}

/// Maximum density of a pattern on the torus `dims` satisfying `con`.
pub fn max_density(dims: &[usize], con: &Constraint, budget: u64) -> Result<SearchResult<TorusPattern>> {
    check_dims(dims)?;
    if con.dim() != dims.len() {
        return Err(Error::DimensionMismatch { expected: dims.len(), found: con.dim() });
    }
    match degree_problem(dims, con)? {
        Some(prob) => {
            let s = russian_doll(&prob, budget, analytic_cap(dims, con), warm_start(dims, con));
            density_result(dims, s.set, s.nodes, s.complete)
        }
        None => {
            let (_, bits, nodes, done) = exhaustive(dims, con, budget)?;
            density_result(dims, bits, nodes, done)
        }
    }
}

impl DegreeProblem {
    /// Unit-weight items for the cells of a box, loaded by in-box neighbors.
    pub(crate) fn from_box(cells: &[Cell], nb: &Neighborhood, n: usize) -> Result<Self> {
        let mut pos = HashMap::new();
        for (i, c) in cells.iter().enumerate() {
            if c.dim() != nb.dim() {
                return Err(Error::DimensionMismatch { expected: nb.dim(), found: c.dim() });
            }
            if pos.insert(c.coords().to_vec(), i).is_some() {
                return Err(Error::InvalidArgument(format!("box cell {c} listed twice")));
            }
        }
        let mut affects = vec![Vec::new(); cells.len()];
        for (j, c) in cells.iter().enumerate() {
            for o in nb.offsets() {
                // Choosing j loads every box cell i with i + o = j.
                let src: Vec<i64> = c.coords().iter().zip(o).map(|(a, b)| a - b).collect();
                if let Some(&i) = pos.get(&src) {
                    affects[j].push((i, 1));
                }
            }
            affects[j].sort_unstable();
        }
        Ok(DegreeProblem { weight: vec![1; cells.len()], affects, cap: n as u64 })
    }
}

fn box_problem(cells: &[Cell], weights: &[Rational], nb: &Neighborhood, n: usize) -> Result<DegreeProblem> {
    if cells.len() != weights.len() {
        return Err(Error::InvalidArgument("one weight per box cell is required".into()));
    }
    if weights.iter().any(|w| w.is_negative()) {
        return Err(Error::InvalidArgument("weights must be nonnegative".into()));
    }
    let mut prob = DegreeProblem::from_box(cells, nb, n)?;
    let scale = Rational::from_integer(common_denominator(weights.iter()));
    prob.weight = weights.iter().map(|w| to_u64(&(w * &scale).to_integer())).collect::<Result<_>>()?;
    Ok(prob)
}

fn unscale(v: u64, weights: &[Rational]) -> Rational {
    Rational::new(BigInt::from(v), common_denominator(weights.iter()))
}

/// Maximum total weight of a subset of `cells` in which every member has at
/// most `n` neighbors inside the box. The witness lists the chosen cells.
pub fn max_weighted_subset(
    cells: &[Cell],
    weights: &[Rational],
    nb: &Neighborhood,
    n: usize,
    budget: u64,
) -> Result<SearchResult<Vec<Cell>>> {
    let prob = box_problem(cells, weights, nb, n)?;
    let s = russian_doll(&prob, budget, None, None);
    let witness = (0..cells.len()).filter(|&i| s.set[i]).map(|i| cells[i].clone()).collect();
    Ok(SearchResult {
        best_value: unscale(s.value, weights),
        witness,
        nodes_explored: s.nodes,
        proven_optimal: s.complete,
    })
}

/// Up to `limit` subsets of positive-weight cells attaining the maximum.
pub fn maximizing_subsets(
    cells: &[Cell],
    weights: &[Rational],
    nb: &Neighborhood,
    n: usize,
    limit: usize,
    budget: u64,
) -> Result<Vec<Vec<Cell>>> {
    let prob = box_problem(cells, weights, nb, n)?;
    let s = russian_doll(&prob, budget, None, None);
    if !s.complete {
        return Err(Error::BudgetExhausted(budget));
    }
    let (sets, _) = enumerate_sets(&prob, &s.suffix, s.value, limit, budget);
    Ok(sets.into_iter().map(|set| (0..cells.len()).filter(|&i| set[i]).map(|i| cells[i].clone()).collect()).collect())
}

/// Maximum density of a still life on a 2-D torus.
///
/// Condition 3 (at most 3 live neighbors) is hereditary and enforced while
/// branching; conditions 1 and 2 are checked on every candidate incumbent.
/// The suffix optima of the degree-3 relaxation bound the branches.
pub fn max_still_life_density(dims: &[usize], budget: u64) -> Result<SearchResult<TorusPattern>> {
    check_dims(dims)?;
    if dims.len() != 2 {
        return Err(Error::NotPlanar);
    }
    let nb = Neighborhood::moore8();
    let con = Constraint::max_degree(nb.clone(), 3);
    let prob = DegreeProblem::torus(dims, &nb, 3);
    let cap = analytic_cap(dims, &con);
    let relax = russian_doll(&prob, budget, cap, warm_start(dims, &con));
    let n = prob.len();
    let bound: Vec<u64> = if relax.complete { relax.suffix.clone() } else { (0..=n).map(|j| (n - j) as u64).collect() };
    let accept =
        |st: &State| (0..st.chosen.len()).all(|i| if st.chosen[i] { st.load[i] >= 2 } else { st.load[i] != 3 });
    let mut st = State::new(&prob, budget.saturating_sub(relax.nodes));
    let stop = if relax.complete { relax.value } else { cap.unwrap_or(n as u64) };
    let mut inc = Incumbent { value: 0, set: vec![false; n], stop };
    let done = branch(&mut st, 0, 0, &bound, &mut inc, &accept);
    density_result(dims, inc.set, relax.nodes + st.nodes, done)
}

/// Every optimal pattern on `dims` (not reduced by symmetry).
pub fn all_optima(dims: &[usize], con: &Constraint, budget: u64) -> Result<Vec<TorusPattern>> {
    let best = max_density(dims, con, budget)?;
    if !best.proven_optimal {
        return Err(Error::BudgetExhausted(budget));
    }
    let target = best.witness.len() as u64;
    let sets = match degree_problem(dims, con)? {
        Some(prob) => {
            let s = russian_doll(&prob, budget, None, None);
            if !s.complete {
                return Err(Error::BudgetExhausted(budget));
            }
            let (sets, done) = enumerate_sets(&prob, &s.suffix, target, usize::MAX, budget);
            if !done {
                return Err(Error::BudgetExhausted(budget));
            }
            sets
        }
        None => {
            let vol = check_dims(dims)?;
            if vol > 24 {
                return Err(Error::ResourceLimit("exhaustive enumeration needs at most 24 cells".into()));
            }
            let mut out = Vec::new();
            for mask in 0u32..(1 << vol) {
                if mask.count_ones() as u64 != target {
                    continue;
                }
                let bits: Vec<bool> = (0..vol).map(|i| mask >> i & 1 == 1).collect();
                let p = TorusPattern::from_bits(dims, bits.clone())?;
                if satisfies(&p, con)?.is_none() {
                    out.push(bits);
                }
            }
            out
        }
    };
    sets.into_iter().map(|b| TorusPattern::from_bits(dims, b)).collect()
}

/// Optimal patterns up to translations and the axis permutations and sign
/// changes that preserve `dims`. Each class is reported by its smallest
/// member.
pub fn enumerate_optima(dims: &[usize], con: &Constraint, budget: u64) -> Result<Vec<TorusPattern>> {
    let mut classes = BTreeSet::new();
    for p in all_optima(dims, con, budget)? {
        classes.insert(canonical_bits(&p));
    }
    classes.into_iter().map(|b| TorusPattern::from_bits(dims, b)).collect()
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest bit vector among all images of `p` under the torus symmetries.
pub fn canonical_bits(p: &TorusPattern) -> Vec<bool> {
    let dims = p.dims();
    let k = dims.len();
    let vol = p.volume();
    let perms: Vec<Vec<usize>> =
        permutations(k).into_iter().filter(|s| (0..k).all(|i| dims[s[i]] == dims[i])).collect();
    let cells: Vec<Vec<i64>> = (0..vol).filter(|&i| p.bits()[i]).map(|i| coords_of(dims, i)).collect();
    let mut best: Option<Vec<bool>> = None;
    let mut image = vec![0i64; k];
    for perm in &perms {
        for signs in 0u32..(1 << k) {
            for t in 0..vol {
                let shift = coords_of(dims, t);
                let mut bits = vec![false; vol];
                for c in &cells {
                    for i in 0..k {
                        let v = c[perm[i]];
                        image[i] = if signs >> i & 1 == 1 { -v } else { v } + shift[i];
                    }
                    bits[index_of(dims, &image)] = true;
                }
                if best.as_ref().is_none_or(|b| bits < *b) {
                    best = Some(bits);
                }
            }
        }
    }
    best.unwrap_or_else(|| vec![false; vol])
}

/// Exact rational `v / total` helper shared with the bounds module.
pub(crate) fn ratio_of(v: &Rational, total: &Rational) -> Rational {
    if total.is_zero() {
        Rational::zero()
    } else {
        v / total
    }
}
