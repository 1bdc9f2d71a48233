//! Exact rational simplex for `maximize c·x subject to A x ≤ b, x ≥ 0` with
//! `b ≥ 0`, so the origin is a feasible starting vertex. Pivots follow
//! Bland's rule, which rules out cycling.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Unbounded,
}

/// Condensed tableau: row i reads `x_basic[i] = rhs[i] − Σ_j a[i][j]·x_nonbasic[j]`,
/// and the objective reads `z = z0 + Σ_j cost[j]·x_nonbasic[j]`.
struct Tableau {
    a: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    cost: Vec<Rational>,
    z0: Rational,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, e: usize) {
        let p = self.a[r][e].clone();
        let n = self.nonbasic.len();
        for j in 0..n {
            if j != e {
                self.a[r][j] = &self.a[r][j] / &p;
            }
        }
        self.rhs[r] = &self.rhs[r] / &p;
        self.a[r][e] = p.recip();
        for i in 0..self.a.len() {
            if i == r || self.a[i][e].is_zero() {
                continue;
            }
            let f = self.a[i][e].clone();
            for j in 0..n {
                if j != e && !self.a[r][j].is_zero() {
                    let d = &f * &self.a[r][j];
                    self.a[i][j] -= d;
                }
            }
            let d = &f * &self.rhs[r];
            self.rhs[i] -= d;
            self.a[i][e] = -(&f * &self.a[r][e]);
        }
        let f = self.cost[e].clone();
        if !f.is_zero() {
            for j in 0..n {
                if j != e {
                    let d = &f * &self.a[r][j];
                    self.cost[j] -= d;
                }
            }
            self.z0 += &f * &self.rhs[r];
            self.cost[e] = -(&f * &self.a[r][e]);
        }
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[e]);
    }
}

pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> Result<LpOutcome> {
    let n = c.len();
    if a.len() != b.len() || a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument("inconsistent LP dimensions".into()));
    }
    if b.iter().any(|v| v.is_negative()) {
        return Err(Error::InvalidArgument("right-hand side must be nonnegative".into()));
    }
    let m = a.len();
    let mut t = Tableau {
        a: a.to_vec(),
        rhs: b.to_vec(),
        cost: c.to_vec(),
        z0: Rational::zero(),
        basic: (n..n + m).collect(),
        nonbasic: (0..n).collect(),
    };
    loop {
        let entering = (0..n).filter(|&j| t.cost[j].is_positive()).min_by_key(|&j| t.nonbasic[j]);
        let Some(e) = entering else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t.a[i][e].is_positive() {
                continue;
            }
            let ratio = &t.rhs[i] / &t.a[i][e];
            let better = match &leave {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && t.basic[i] < t.basic[*r]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, _)) = leave else { return Ok(LpOutcome::Unbounded) };
        t.pivot(r, e);
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &var) in t.basic.iter().enumerate() {
        if var < n {
            x[var] = t.rhs[i].clone();
        }
    }
    Ok(LpOutcome::Optimal { value: t.z0, x })
}
