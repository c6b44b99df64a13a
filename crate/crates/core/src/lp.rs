//! Exact rational linear programming.
//!
//! Problems have the form `min c·x` subject to `A x ≥ b`, `x ≥ 0`. They are
//! solved through the dual `max b·y` subject to `Aᵀ y ≤ c`, `y ≥ 0`, whose
//! tableau has one row per primal variable; the rate regions handled here
//! have few variables and many constraints, so this keeps the tableau small.
//! Pivoting follows Bland's rule, so the method terminates. The primal
//! optimum is read off the final objective row and re-verified against
//! every constraint.
//!
//! Float entries are lifted to rationals by rounding to multiples of
//! `2^-40`.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result, SkcError};
use crate::value::Value;

/// `Σ_j coeffs[j]·x_j ≥ rhs`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<Value>,
    pub rhs: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinearProgram {
    n_vars: usize,
    objective: Vec<Value>,
    rows: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Value>) -> Self {
        LinearProgram {
            n_vars: objective.len(),
            objective,
            rows: Vec::new(),
        }
    }

    pub fn add_row(&mut self, coeffs: Vec<Value>, rhs: Value) -> Result<()> {
        if coeffs.len() != self.n_vars {
            return domain(format!(
                "constraint has {} coefficients for {} variables",
                coeffs.len(),
                self.n_vars
            ));
        }
        self.rows.push(Constraint { coeffs, rhs });
        Ok(())
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn objective(&self) -> &[Value] {
        &self.objective
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    fn values(&self) -> impl Iterator<Item = &Value> {
        self.objective.iter().chain(
            self.rows
                .iter()
                .flat_map(|r| r.coeffs.iter().chain(std::iter::once(&r.rhs))),
        )
    }

    pub fn is_exact(&self) -> bool {
        self.values().all(Value::is_exact)
    }

    /// Largest tolerance among the entries (zero when exact).
    pub fn tolerance(&self) -> f64 {
        self.values().map(Value::tol).fold(0.0, f64::max)
    }

    /// Whether `x` satisfies every row and `x ≥ 0`, exactly.
    pub fn is_feasible_exact(&self, x: &[BigRational]) -> bool {
        x.iter().all(|v| !v.is_negative())
            && self.rows.iter().all(|r| {
                let lhs = r
                    .coeffs
                    .iter()
                    .zip(x)
                    .fold(BigRational::zero(), |acc, (a, v)| {
                        acc + a.to_rational_lifted() * v
                    });
                lhs >= r.rhs.to_rational_lifted()
            })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LpSolution {
    pub optimum: Value,
    pub witness: Vec<Value>,
}

/// Dense simplex tableau for `max cost·v` s.t. `rows · v = rhs`, `v ≥ 0`,
/// with a feasible basis.
struct Tableau {
    a: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
    /// Reduced costs `c_B B⁻¹ A_j − c_j`.
    d: Vec<BigRational>,
    z: BigRational,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn ncols(&self) -> usize {
        self.d.len()
    }

    fn price(&mut self, cost: &[BigRational]) {
        let n = self.ncols();
        self.d = (0..n)
            .map(|j| {
                let mut s = -cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.a[i][j].is_zero() {
                        s += &cost[b] * &self.a[i][j];
                    }
                }
                s
            })
            .collect();
        self.z = self
            .basis
            .iter()
            .zip(&self.rhs)
            .fold(BigRational::zero(), |acc, (&b, r)| acc + &cost[b] * r);
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.a[row][col].clone();
        for v in self.a[row].iter_mut() {
            if !v.is_zero() {
                *v /= &p;
            }
        }
        self.rhs[row] /= &p;
        let prow = self.a[row].clone();
        let prhs = self.rhs[row].clone();
        for i in 0..self.a.len() {
            if i == row || self.a[i][col].is_zero() {
                continue;
            }
            let f = self.a[i][col].clone();
            for (v, pv) in self.a[i].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !self.d[col].is_zero() {
            let f = self.d[col].clone();
            for (v, pv) in self.d.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.z -= &f * &prhs;
        }
        self.basis[row] = col;
    }

    /// Bland's rule: entering column is the lowest index with negative
    /// reduced cost; leaving row minimizes the ratio, ties to the lowest
    /// basic index.
    fn run(&mut self, allowed: usize) -> Outcome {
        loop {
            let Some(col) = (0..allowed).find(|&j| self.d[j].is_negative()) else {
                return Outcome::Optimal;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for i in 0..self.a.len() {
                if !self.a[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.a[i][col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return Outcome::Unbounded,
            }
        }
    }
}

enum DualResult {
    Optimal(Vec<BigRational>, BigRational),
    DualUnbounded,
    DualInfeasible,
}

/// Solves the dual of `min c·x, A x ≥ b, x ≥ 0`.
fn solve_dual(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> DualResult {
    let r = a.len();
    let n = c.len();
    // columns: y_0..y_{r-1}, slacks s_0..s_{n-1}, aux
    let aux = r + n;
    let ncols = r + n + 1;
    let mut rows = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = vec![BigRational::zero(); ncols];
        for (k, ar) in a.iter().enumerate() {
            row[k] = ar[j].clone();
        }
        row[r + j] = BigRational::from_integer(1.into());
        row[aux] = BigRational::from_integer((-1).into());
        rows.push(row);
    }
    let mut t = Tableau {
        a: rows,
        rhs: c.to_vec(),
        basis: (r..r + n).collect(),
        d: vec![BigRational::zero(); ncols],
        z: BigRational::zero(),
    };

    let most_negative = (0..n)
        .filter(|&j| t.rhs[j].is_negative())
        .min_by(|&i, &j| t.rhs[i].cmp(&t.rhs[j]).then(i.cmp(&j)));
    if let Some(row) = most_negative {
        // phase 1: max −aux
        let mut cost = vec![BigRational::zero(); ncols];
        cost[aux] = BigRational::from_integer((-1).into());
        t.pivot(row, aux);
        t.price(&cost);
        if let Outcome::Unbounded = t.run(ncols) {
            // −aux is bounded above by zero; cannot happen
            return DualResult::DualInfeasible;
        }
        if t.z.is_negative() {
            return DualResult::DualInfeasible;
        }
        if let Some(i) = t.basis.iter().position(|&v| v == aux) {
            match (0..aux).find(|&j| !t.a[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.a.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                }
            }
        }
    }
    for row in t.a.iter_mut() {
        row[aux] = BigRational::zero();
    }
    let mut cost = vec![BigRational::zero(); ncols];
    cost[..r].clone_from_slice(b);
    t.price(&cost);
    match t.run(aux) {
        Outcome::Unbounded => DualResult::DualUnbounded,
        Outcome::Optimal => {
            let x = (0..n).map(|j| t.d[r + j].clone()).collect();
            DualResult::Optimal(x, t.z)
        }
    }
}

/// Minimizes the program exactly. Infeasible and unbounded programs are
/// distinct errors.
pub fn simplex_min(lp: &LinearProgram) -> Result<LpSolution> {
    let a: Vec<Vec<BigRational>> = lp
        .rows
        .iter()
        .map(|r| r.coeffs.iter().map(Value::to_rational_lifted).collect())
        .collect();
    let b: Vec<BigRational> = lp.rows.iter().map(|r| r.rhs.to_rational_lifted()).collect();
    let c: Vec<BigRational> = lp.objective.iter().map(Value::to_rational_lifted).collect();

    let (x, opt) = match solve_dual(&a, &b, &c) {
        DualResult::Optimal(x, z) => (x, z),
        DualResult::DualUnbounded => return Err(SkcError::Infeasible),
        DualResult::DualInfeasible => {
            let zero = vec![BigRational::zero(); c.len()];
            return match solve_dual(&a, &b, &zero) {
                DualResult::DualUnbounded => Err(SkcError::Infeasible),
                _ => Err(SkcError::Unbounded),
            };
        }
    };

    if !lp.is_feasible_exact(&x) {
        return Err(SkcError::Internal(
            "simplex witness violates a constraint".into(),
        ));
    }
    let cx = c
        .iter()
        .zip(&x)
        .fold(BigRational::zero(), |acc, (ci, xi)| acc + ci * xi);
    if cx != opt {
        return Err(SkcError::Internal(
            "simplex witness objective differs from optimum".into(),
        ));
    }

    let wrap = |q: BigRational| -> Value {
        if lp.is_exact() {
            Value::Exact(q)
        } else {
            Value::float_tol(
                q.to_f64().unwrap_or(f64::NAN),
                lp.tolerance().max(crate::value::DEFAULT_TOLERANCE),
            )
        }
    };
    Ok(LpSolution {
        optimum: wrap(opt),
        witness: x.into_iter().map(wrap).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Value> {
        v.iter().map(|&x| Value::int(x)).collect()
    }

    #[test]
    fn single_bound() {
        let mut lp = LinearProgram::new(ints(&[1]));
        lp.add_row(ints(&[1]), Value::int(3)).unwrap();
        let s = simplex_min(&lp).unwrap();
        assert_eq!(s.optimum, Value::int(3));
        assert_eq!(s.witness, ints(&[3]));
    }

    #[test]
    fn two_variables() {
        let mut lp = LinearProgram::new(ints(&[1, 1]));
        lp.add_row(ints(&[1, 0]), Value::int(1)).unwrap();
        lp.add_row(ints(&[0, 1]), Value::int(1)).unwrap();
        lp.add_row(ints(&[1, 1]), Value::int(3)).unwrap();
        assert_eq!(simplex_min(&lp).unwrap().optimum, Value::int(3));
    }

    #[test]
    fn fractional_optimum() {
        // triangle omniscience region
        let mut lp = LinearProgram::new(ints(&[1, 1, 1]));
        for (row, rhs) in [
            ([1, 0, 0], 1),
            ([0, 1, 0], 1),
            ([0, 0, 1], 1),
            ([1, 1, 0], 2),
            ([0, 1, 1], 2),
            ([1, 0, 1], 2),
        ] {
            lp.add_row(ints(&row), Value::int(rhs)).unwrap();
        }
        assert_eq!(simplex_min(&lp).unwrap().optimum, Value::ratio(3, 1));
        let mut lp = LinearProgram::new(ints(&[1, 1, 1]));
        for (row, rhs) in [([1, 1, 0], 1), ([0, 1, 1], 1), ([1, 0, 1], 1)] {
            lp.add_row(ints(&row), Value::int(rhs)).unwrap();
        }
        assert_eq!(simplex_min(&lp).unwrap().optimum, Value::ratio(3, 2));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(ints(&[1]));
        lp.add_row(ints(&[-1]), Value::int(1)).unwrap();
        assert_eq!(simplex_min(&lp).unwrap_err(), SkcError::Infeasible);

        let mut lp = LinearProgram::new(ints(&[-1]));
        lp.add_row(ints(&[1]), Value::int(1)).unwrap();
        assert_eq!(simplex_min(&lp).unwrap_err(), SkcError::Unbounded);

        let mut lp = LinearProgram::new(ints(&[-1, 1]));
        lp.add_row(ints(&[-1, 0]), Value::int(-4)).unwrap();
        let s = simplex_min(&lp).unwrap();
        assert_eq!(s.optimum, Value::int(-4));
    }

    #[test]
    fn float_entries() {
        let mut lp = LinearProgram::new(ints(&[1]));
        lp.add_row(ints(&[1]), Value::float(0.25)).unwrap();
        let s = simplex_min(&lp).unwrap();
        assert!(!s.optimum.is_exact());
        assert!(s.optimum.approx_eq(&Value::float(0.25)));
    }
}
