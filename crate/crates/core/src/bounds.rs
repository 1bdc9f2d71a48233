//! Upper bounds on extremal densities: closed-form bounds and weight
//! certificates over a finite box, including their exact LP optimization.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Cell, Neighborhood};
use crate::rational::{from_counts, int, Rational};
use crate::search::{max_weighted_subset, maximizing_subsets, ratio_of, DegreeProblem};
use crate::simplex::{maximize, LpOutcome};

/// s/(2s − n) for a neighborhood of size s.
pub fn double_count_bound(s: usize, n: usize) -> Result<Rational> {
    if n > s {
        return Err(Error::InvalidArgument(format!("degree {n} exceeds neighborhood size {s}")));
    }
    if s == 0 {
        return Ok(int(1));
    }
    Ok(from_counts(s, 2 * s - n))
}

/// 6/(14 − n), valid for the Moore neighborhood when n ≤ 3.
pub fn refined_moore_bound(n: usize) -> Result<Rational> {
    if n > 3 {
        return Err(Error::InvalidArgument(format!("refined bound needs n ≤ 3, got {n}")));
    }
    Ok(from_counts(6, 14 - n))
}

/// 1/(4 − n), valid for the Moore neighborhood when n ≤ 3.
pub fn voronoi_bound(n: usize) -> Result<Rational> {
    if n > 3 {
        return Err(Error::InvalidArgument(format!("Voronoi bound needs n ≤ 3, got {n}")));
    }
    Ok(from_counts(1, 4 - n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMethod {
    Trivial,
    DoubleCounting,
    RefinedMoore,
    Voronoi,
    Certificate,
    LinearProgram,
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundMethod::Trivial => "trivial",
            BoundMethod::DoubleCounting => "double-counting",
            BoundMethod::RefinedMoore => "refined-moore",
            BoundMethod::Voronoi => "voronoi",
            BoundMethod::Certificate => "certificate",
            BoundMethod::LinearProgram => "linear-program",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub bound: Rational,
    pub method: BoundMethod,
    pub witness: Option<Vec<Cell>>,
}

/// The smallest applicable closed-form bound. The refined and Voronoi
/// bounds apply only to the Moore neighborhood with n ≤ 3.
pub fn bound_suite(nb: &Neighborhood, n: usize) -> BoundResult {
    let mut best = BoundResult { bound: int(1), method: BoundMethod::Trivial, witness: None };
    let mut offer = |bound: Rational, method| {
        if bound < best.bound {
            best = BoundResult { bound, method, witness: None };
        }
    };
    if let Ok(b) = double_count_bound(nb.len(), n) {
        offer(b, BoundMethod::DoubleCounting);
    }
    if *nb == Neighborhood::moore8() && n <= 3 {
        offer(refined_moore_bound(n).expect("n ≤ 3"), BoundMethod::RefinedMoore);
        offer(voronoi_bound(n).expect("n ≤ 3"), BoundMethod::Voronoi);
    }
    best
}

/// Nonnegative weights on a W×H box, stored row by row (row r is y = r).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightCertificate {
    pub width: usize,
    pub height: usize,
    pub weights: Vec<Rational>,
    pub nb: Neighborhood,
    pub n: usize,
    pub d: Rational,
}

impl WeightCertificate {
    pub fn new(
        width: usize,
        height: usize,
        weights: Vec<Rational>,
        nb: Neighborhood,
        n: usize,
        d: Rational,
    ) -> Result<Self> {
        if width == 0 || height == 0 || weights.len() != width * height {
            return Err(Error::InvalidCertificate(format!(
                "{} weights do not fill a {width}x{height} box",
                weights.len()
            )));
        }
        if nb.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: nb.dim() });
        }
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidCertificate("negative weight".into()));
        }
        if weights.iter().all(|w| w.is_zero()) {
            return Err(Error::InvalidCertificate("weights sum to zero".into()));
        }
        Ok(WeightCertificate { width, height, weights, nb, n, d })
    }

    pub fn cells(&self) -> Vec<Cell> {
        box_cells(self.width, self.height)
    }

    pub fn total_weight(&self) -> Rational {
        self.weights.iter().sum()
    }
}

/// Cells of the W×H box in row-major order.
pub fn box_cells(width: usize, height: usize) -> Vec<Cell> {
    (0..height as i64).flat_map(|y| (0..width as i64).map(move |x| Cell::from((x, y)))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateCheck {
    pub valid: bool,
    pub max_weight: Rational,
    pub total_weight: Rational,
    pub tight_subsets: Vec<Vec<Cell>>,
    pub nodes_explored: u64,
}

/// Number of maximizing subsets reported by [`verify_certificate`].
pub const TIGHT_SUBSET_CAP: usize = 8;

/// Computes M, the largest weight of a box subset whose members each have
/// at most n neighbors inside the box, and compares it with D·Σw.
pub fn verify_certificate(cert: &WeightCertificate, budget: u64) -> Result<CertificateCheck> {
    let cells = cert.cells();
    let r = max_weighted_subset(&cells, &cert.weights, &cert.nb, cert.n, budget)?;
    if !r.proven_optimal {
        return Err(Error::BudgetExhausted(budget));
    }
    let total = cert.total_weight();
    let tight = maximizing_subsets(&cells, &cert.weights, &cert.nb, cert.n, TIGHT_SUBSET_CAP, budget)?;
    Ok(CertificateCheck {
        valid: r.best_value <= &cert.d * &total,
        max_weight: r.best_value,
        total_weight: total,
        tight_subsets: tight,
        nodes_explored: r.nodes_explored,
    })
}

/// M/Σw, the density bound the certificate's weights support.
pub fn averaging_bound(cert: &WeightCertificate, budget: u64) -> Result<Rational> {
    let check = verify_certificate(cert, budget)?;
    if !check.valid {
        return Err(Error::InvalidCertificate(format!(
            "max weight {} exceeds {} x {}",
            check.max_weight, cert.d, check.total_weight
        )));
    }
    Ok(ratio_of(&check.max_weight, &check.total_weight))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpBound {
    pub d_star: Rational,
    /// Optimal weights on the box, row-major, summing to 1.
    pub weights: Vec<Rational>,
    /// Number of maximal admissible subsets used as constraints.
    pub constraints: usize,
}

/// Default cap on the number of maximal admissible subsets.
pub const MAX_LP_ROWS: usize = 20_000;

/// Maximal subsets of the box in which every member has at most n in-box
/// neighbors, as row-major index lists.
pub fn maximal_admissible_subsets(
    width: usize,
    height: usize,
    nb: &Neighborhood,
    n: usize,
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    let cells = box_cells(width, height);
    let prob = DegreeProblem::from_box(&cells, nb, n)?;
    let mut out = Vec::new();
    let mut load = vec![0u64; cells.len()];
    let mut chosen = vec![false; cells.len()];
    if !collect_maximal(&prob, 0, &mut load, &mut chosen, &mut out, limit) {
        return Err(Error::ResourceLimit(format!("more than {limit} maximal admissible subsets")));
    }
    Ok(out)
}

fn can_add(prob: &DegreeProblem, load: &[u64], chosen: &[bool], j: usize) -> bool {
    // Loads after adding j, checked for j and for chosen cells it touches.
    let extra = |i: usize| prob.affects[j].iter().filter(|&&(k, _)| k == i).map(|&(_, c)| c).sum::<u64>();
    load[j] + extra(j) <= prob.cap
        && prob.affects[j].iter().all(|&(i, c)| !chosen[i] || i == j || load[i] + c <= prob.cap)
}

fn collect_maximal(
    prob: &DegreeProblem,
    i: usize,
    load: &mut Vec<u64>,
    chosen: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> bool {
    let n = chosen.len();
    if (0..n).all(|j| chosen[j] || !can_add(prob, load, chosen, j)) {
        if out.len() >= limit {
            return false;
        }
        out.push((0..n).filter(|&j| chosen[j]).collect());
    }
    for j in i..n {
        if !can_add(prob, load, chosen, j) {
            continue;
        }
        chosen[j] = true;
        for &(k, c) in &prob.affects[j] {
            load[k] += c;
        }
        let ok = collect_maximal(prob, j + 1, load, chosen, out, limit);
        chosen[j] = false;
        for &(k, c) in &prob.affects[j] {
            load[k] -= c;
        }
        if !ok {
            return false;
        }
    }
    true
}

/// Optimal certificate weights on a W×H box by exact linear programming.
///
/// Minimizing D subject to Σ_T w ≤ D over maximal admissible T, Σw = 1 and
/// w ≥ 0 is solved as: maximize Σu subject to Σ_T u ≤ 1, u ≥ 0; then
/// D* = 1/opt and w = u/opt.
pub fn optimal_weights_lp(width: usize, height: usize, nb: &Neighborhood, n: usize) -> Result<LpBound> {
    optimal_weights_lp_with_limit(width, height, nb, n, MAX_LP_ROWS)
}

pub fn optimal_weights_lp_with_limit(
    width: usize,
    height: usize,
    nb: &Neighborhood,
    n: usize,
    limit: usize,
) -> Result<LpBound> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidDims("empty box".into()));
    }
    let rows = maximal_admissible_subsets(width, height, nb, n, limit)?;
    let k = width * height;
    let a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|t| {
            let mut row = vec![Rational::zero(); k];
            for &j in t {
                row[j] = int(1);
            }
            row
        })
        .collect();
    let b = vec![int(1); rows.len()];
    let c = vec![int(1); k];
    match maximize(&c, &a, &b)? {
        LpOutcome::Optimal { value, x } => Ok(LpBound {
            d_star: value.recip(),
            weights: x.iter().map(|u| u / &value).collect(),
            constraints: rows.len(),
        }),
        // Every cell lies in some maximal subset, so the LP is bounded.
        LpOutcome::Unbounded => unreachable!("certificate LP is bounded"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn closed_forms() {
        assert_eq!(double_count_bound(8, 6).unwrap(), ratio(4, 5));
        assert_eq!(double_count_bound(8, 8).unwrap(), int(1));
        assert_eq!(double_count_bound(6, 5).unwrap(), ratio(6, 7));
        assert!(double_count_bound(4, 5).is_err());
        assert_eq!(refined_moore_bound(2).unwrap(), ratio(1, 2));
        assert_eq!(refined_moore_bound(3).unwrap(), ratio(6, 11));
        assert_eq!(refined_moore_bound(0).unwrap(), ratio(3, 7));
        assert!(refined_moore_bound(4).is_err());
        assert_eq!(voronoi_bound(0).unwrap(), ratio(1, 4));
        assert_eq!(voronoi_bound(1).unwrap(), ratio(1, 3));
        assert_eq!(voronoi_bound(2).unwrap(), ratio(1, 2));
        assert!(voronoi_bound(4).is_err());
    }

    #[test]
    fn suite_picks_minimum() {
        let m = Neighborhood::moore8();
        let r = bound_suite(&m, 3);
        assert_eq!((r.bound, r.method), (ratio(6, 11), BoundMethod::RefinedMoore));
        let r = bound_suite(&m, 5);
        assert_eq!((r.bound, r.method), (ratio(8, 11), BoundMethod::DoubleCounting));
        let r = bound_suite(&m, 0);
        assert_eq!((r.bound, r.method), (ratio(1, 4), BoundMethod::Voronoi));
        assert_eq!(bound_suite(&m, 9).method, BoundMethod::Trivial);
        assert_eq!(bound_suite(&Neighborhood::von_neumann4(), 2).bound, ratio(2, 3));
    }

    #[test]
    fn trivial_certificates() {
        let m = Neighborhood::moore8();
        let c = WeightCertificate::new(2, 2, vec![int(1); 4], m.clone(), 8, int(1)).unwrap();
        let r = verify_certificate(&c, 1_000).unwrap();
        assert!(r.valid);
        assert_eq!(r.max_weight, int(4));
        let c = WeightCertificate::new(1, 1, vec![int(1)], m.clone(), 0, int(1)).unwrap();
        assert_eq!(averaging_bound(&c, 1_000).unwrap(), int(1));
        let bad = WeightCertificate::new(2, 2, vec![int(1); 4], m.clone(), 0, ratio(1, 8)).unwrap();
        assert!(!verify_certificate(&bad, 1_000).unwrap().valid);
        assert!(averaging_bound(&bad, 1_000).is_err());
        assert!(WeightCertificate::new(2, 2, vec![int(1); 3], m.clone(), 0, int(1)).is_err());
        assert!(WeightCertificate::new(1, 1, vec![int(-1)], m.clone(), 0, int(1)).is_err());
        assert!(WeightCertificate::new(1, 1, vec![int(0)], m, 0, int(1)).is_err());
    }

    #[test]
    fn maximal_subsets_small() {
        let m = Neighborhood::moore8();
        assert_eq!(maximal_admissible_subsets(2, 2, &m, 0, 100).unwrap().len(), 4);
        assert_eq!(maximal_admissible_subsets(2, 2, &m, 3, 100).unwrap(), vec![vec![0, 1, 2, 3]]);
        assert!(maximal_admissible_subsets(4, 4, &m, 4, 10).is_err());
    }

    #[test]
    fn lp_small() {
        let m = Neighborhood::moore8();
        for n in 0..=8 {
            assert_eq!(optimal_weights_lp(1, 1, &m, n).unwrap().d_star, int(1));
        }
        let r = optimal_weights_lp(2, 2, &m, 0).unwrap();
        assert_eq!(r.d_star, ratio(1, 4));
        assert_eq!(r.weights.iter().sum::<Rational>(), int(1));
        assert_eq!(optimal_weights_lp(2, 2, &m, 4).unwrap().d_star, int(1));
        assert_eq!(optimal_weights_lp(3, 3, &m, 4).unwrap().d_star, ratio(2, 3));
        assert_eq!(optimal_weights_lp(3, 3, &m, 3).unwrap().d_star, ratio(6, 11));
    }
}
