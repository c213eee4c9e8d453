//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Programs are `minimise c.x` subject to row constraints and `x >= 0`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }

    fn flipped(self) -> Relation {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        }
    }

    fn holds(self, lhs: &BigRational, rhs: &BigRational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub label: String,
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub names: Vec<String>,
    pub objective: Vec<BigRational>,
    pub rows: Vec<Row>,
}

impl LinearProgram {
    pub fn new(names: Vec<String>, objective: Vec<BigRational>) -> Self {
        assert_eq!(names.len(), objective.len());
        LinearProgram {
            names,
            objective,
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn var(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn add_row(
        &mut self,
        label: impl Into<String>,
        coeffs: Vec<BigRational>,
        relation: Relation,
        rhs: BigRational,
    ) {
        assert_eq!(coeffs.len(), self.num_vars(), "row width");
        self.rows.push(Row {
            label: label.into(),
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn objective_at(&self, x: &[BigRational]) -> BigRational {
        dot(&self.objective, x)
    }

    pub fn is_feasible(&self, x: &[BigRational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && self
                .rows
                .iter()
                .all(|r| r.relation.holds(&dot(&r.coeffs, x), &r.rhs))
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

fn term(coef: &BigRational, name: &str, first: bool) -> Option<String> {
    if coef.is_zero() {
        return None;
    }
    let sign = if coef.is_negative() {
        "-"
    } else if first {
        ""
    } else {
        "+"
    };
    let mag = coef.abs();
    let body = if mag == BigRational::from_integer(1.into()) {
        name.to_string()
    } else {
        format!("{mag}*{name}")
    };
    Some(format!("{sign}{body}"))
}

fn linear_text(coeffs: &[BigRational], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (c, n) in coeffs.iter().zip(names) {
        if let Some(t) = term(c, n, parts.is_empty()) {
            parts.push(t);
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

impl fmt::Display for LinearProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "minimise {}", linear_text(&self.objective, &self.names))?;
        for r in &self.rows {
            writeln!(
                f,
                "  {}: {} {} {}",
                r.label,
                linear_text(&r.coeffs, &self.names),
                r.relation.symbol(),
                r.rhs
            )?;
        }
        write!(f, "  all variables >= 0")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal values; empty unless optimal.
    pub x: Vec<BigRational>,
    pub value: BigRational,
    /// One multiplier per row: `<= 0` on `<=` rows, `>= 0` on `>=` rows.
    pub duals: Vec<BigRational>,
    pub pivots: usize,
}

impl LpSolution {
    fn status_only(status: LpStatus, pivots: usize) -> Self {
        LpSolution {
            status,
            x: Vec::new(),
            value: BigRational::zero(),
            duals: Vec::new(),
            pivots,
        }
    }

    /// Indices of the variables with nonzero value.
    pub fn support(&self) -> Vec<usize> {
        self.x
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

struct Tableau {
    t: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        self.t[i].last().expect("rhs column")
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        for v in self.t[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    fn reduced_cost(&self, cost: &[BigRational], j: usize) -> BigRational {
        let mut r = cost[j].clone();
        for (i, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.t[i][j].is_zero() {
                r -= &cost[b] * &self.t[i][j];
            }
        }
        r
    }

    /// Runs Bland's rule over the columns in `allowed`. Returns false when
    /// the objective is unbounded below.
    fn optimise(&mut self, cost: &[BigRational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..allowed.len())
                .filter(|&j| allowed[j] && !self.basis.contains(&j))
                .find(|&j| self.reduced_cost(cost, j).is_negative());
            let Some(c) = entering else { return true };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let take = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if take {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Solves the program exactly. Infeasible and unbounded programs are
/// reported through the status.
pub fn solve_lp(lp: &LinearProgram) -> LpSolution {
    let n = lp.num_vars();
    let m = lp.rows.len();
    // normalise to non-negative right-hand sides
    let mut negated = vec![false; m];
    let mut rels = Vec::with_capacity(m);
    for (i, r) in lp.rows.iter().enumerate() {
        negated[i] = r.rhs.is_negative();
        rels.push(if negated[i] {
            r.relation.flipped()
        } else {
            r.relation
        });
    }
    let slack_count = rels.iter().filter(|&&r| r != Relation::Eq).count();
    let art_count = rels.iter().filter(|&&r| r != Relation::Le).count();
    let width = n + slack_count + art_count;
    let mut t = vec![vec![BigRational::zero(); width + 1]; m];
    let mut basis = vec![0; m];
    // column holding the initial identity entry of each row
    let mut unit_col = vec![0; m];
    let mut is_art = vec![false; width];
    let (mut s, mut a) = (n, n + slack_count);
    let one = BigRational::from_integer(1.into());
    for (i, r) in lp.rows.iter().enumerate() {
        let sign = if negated[i] {
            -one.clone()
        } else {
            one.clone()
        };
        for (cell, a) in t[i].iter_mut().zip(&r.coeffs) {
            *cell = a * &sign;
        }
        t[i][width] = &r.rhs * &sign;
        match rels[i] {
            Relation::Le => {
                t[i][s] = one.clone();
                basis[i] = s;
                unit_col[i] = s;
                s += 1;
            }
            Relation::Ge => {
                t[i][s] = -one.clone();
                s += 1;
                t[i][a] = one.clone();
                is_art[a] = true;
                basis[i] = a;
                unit_col[i] = a;
                a += 1;
            }
            Relation::Eq => {
                t[i][a] = one.clone();
                is_art[a] = true;
                basis[i] = a;
                unit_col[i] = a;
                a += 1;
            }
        }
    }
    let mut tab = Tableau {
        t,
        basis,
        pivots: 0,
    };

    if art_count > 0 {
        let cost1: Vec<BigRational> = (0..width)
            .map(|j| {
                if is_art[j] {
                    one.clone()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        let all = vec![true; width];
        tab.optimise(&cost1, &all);
        let infeas: BigRational = (0..m)
            .filter(|&i| is_art[tab.basis[i]])
            .map(|i| tab.rhs(i).clone())
            .fold(BigRational::zero(), |x, y| x + y);
        if infeas.is_positive() {
            return LpSolution::status_only(LpStatus::Infeasible, tab.pivots);
        }
        // drive zero-level artificials out where a real column can replace them
        for i in 0..m {
            if is_art[tab.basis[i]] {
                if let Some(j) = (0..width).find(|&j| !is_art[j] && !tab.t[i][j].is_zero()) {
                    tab.pivot(i, j);
                }
            }
        }
    }

    let mut cost2 = vec![BigRational::zero(); width];
    cost2[..n].clone_from_slice(&lp.objective);
    let allowed: Vec<bool> = (0..width).map(|j| !is_art[j]).collect();
    if !tab.optimise(&cost2, &allowed) {
        return LpSolution::status_only(LpStatus::Unbounded, tab.pivots);
    }

    let mut x = vec![BigRational::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.rhs(i).clone();
        }
    }
    // y = c_B B^-1, read off the columns that started as the identity
    let duals = (0..m)
        .map(|r| {
            let mut y = BigRational::zero();
            for (i, &b) in tab.basis.iter().enumerate() {
                if !cost2[b].is_zero() {
                    y += &cost2[b] * &tab.t[i][unit_col[r]];
                }
            }
            if negated[r] {
                -y
            } else {
                y
            }
        })
        .collect();
    let value = lp.objective_at(&x);
    LpSolution {
        status: LpStatus::Optimal,
        x,
        value,
        duals,
        pivots: tab.pivots,
    }
}

/// Exact check of primal feasibility, dual feasibility and a zero gap.
pub fn verify_certificate(lp: &LinearProgram, sol: &LpSolution) -> bool {
    if sol.status != LpStatus::Optimal || sol.duals.len() != lp.rows.len() {
        return false;
    }
    if !lp.is_feasible(&sol.x) || lp.objective_at(&sol.x) != sol.value {
        return false;
    }
    let signs_ok = lp
        .rows
        .iter()
        .zip(&sol.duals)
        .all(|(r, y)| match r.relation {
            Relation::Le => !y.is_positive(),
            Relation::Ge => !y.is_negative(),
            Relation::Eq => true,
        });
    if !signs_ok {
        return false;
    }
    for j in 0..lp.num_vars() {
        let col = lp
            .rows
            .iter()
            .zip(&sol.duals)
            .fold(BigRational::zero(), |acc, (r, y)| acc + &r.coeffs[j] * y);
        if col > lp.objective[j] {
            return false;
        }
    }
    let dual_value = lp
        .rows
        .iter()
        .zip(&sol.duals)
        .fold(BigRational::zero(), |acc, (r, y)| acc + &r.rhs * y);
    dual_value == sol.value
}
