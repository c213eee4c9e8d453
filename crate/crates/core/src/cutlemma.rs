//! The cut-lemma conditions: for every small cut between two connected
//! pieces, the worst-case degree split of the cut endpoints must still
//! produce at least `f_{c,d}` times the product of the two spanning-tree
//! counts.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::count::spanning_tree_count;
use crate::cut::CutResult;
use crate::error::{Error, Result};
use crate::factors::FactorTable;
use crate::graph::SimpleGraph;
use crate::hp::rational_to_fixed;

/// Lexicographically greatest partition of `total` into parts `<= cap`
/// with at least `min_parts` parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreedyPartition {
    pub total: usize,
    pub cap: usize,
    pub min_parts: usize,
    pub parts: Vec<usize>,
}

impl fmt::Display for GreedyPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

pub fn greedy_partition(total: usize, cap: usize, min_parts: usize) -> Result<GreedyPartition> {
    let infeasible = || Error::NoPartition {
        c: total,
        cap,
        min_parts,
    };
    if total == 0 || cap == 0 || min_parts > total {
        return Err(infeasible());
    }
    let mut parts = Vec::new();
    let mut left = total;
    while left > 0 {
        // leave one unit for every part still owed
        let owed = min_parts.saturating_sub(parts.len() + 1);
        let p = cap.min(left - owed);
        parts.push(p);
        left -= p;
    }
    Ok(GreedyPartition {
        total,
        cap,
        min_parts,
        parts,
    })
}

fn choose2(k: usize) -> i64 {
    (k * k.saturating_sub(1) / 2) as i64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutCondition {
    pub c: usize,
    pub d: usize,
    pub maxu: usize,
    pub maxv: usize,
    pub u_partition: GreedyPartition,
    pub v_partition: GreedyPartition,
    pub bound: BigRational,
    pub margin: BigRational,
}

impl CutCondition {
    /// Builds the condition and evaluates it against `factors`.
    pub fn new(
        c: usize,
        d: usize,
        maxu: usize,
        maxv: usize,
        factors: &FactorTable,
    ) -> Result<Self> {
        if !(2 <= c && c < d && maxv >= 2 && maxu >= maxv && maxu + maxv <= c + 1) {
            return Err(Error::Precondition(format!(
                "({c}, {d}, {maxu}, {maxv}) is not a cut condition"
            )));
        }
        let u_partition = greedy_partition(c, maxu, maxv)?;
        let v_partition = greedy_partition(c, maxv, maxu)?;
        let mut cond = CutCondition {
            c,
            d,
            maxu,
            maxv,
            u_partition,
            v_partition,
            bound: BigRational::zero(),
            margin: BigRational::zero(),
        };
        cond.bound = condition_lower_bound(&cond, factors)?;
        cond.margin = &cond.bound - factors.get(c, d)?;
        Ok(cond)
    }

    /// Number of endpoint pairs that do not share a vertex on either side.
    pub fn distinct_pairs(&self) -> i64 {
        let tail = |p: &GreedyPartition| p.parts.iter().skip(1).map(|&k| choose2(k)).sum::<i64>();
        2 * (choose2(self.c) - choose2(self.maxu) - choose2(self.maxv))
            - tail(&self.u_partition)
            - tail(&self.v_partition)
    }
}

/// `c + (f_{maxu} - maxu) + (f_{maxv} - maxv) + (f_2 - 2) * pairs`.
pub fn condition_lower_bound(cond: &CutCondition, factors: &FactorTable) -> Result<BigRational> {
    let d = cond.d;
    let int = |k: usize| BigRational::from_integer(BigInt::from(k));
    let fu = factors.get(cond.maxu, d)? - int(cond.maxu);
    let fv = factors.get(cond.maxv, d)? - int(cond.maxv);
    let f2 = factors.get(2, d)? - int(2);
    let pairs = BigRational::from_integer(cond.distinct_pairs().into());
    Ok(int(cond.c) + fu + fv + f2 * pairs)
}

/// `(maxu, maxv)` pairs admissible for a cut of size `c`.
pub fn condition_shapes(c: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for maxu in 2..=c {
        for maxv in 2..=maxu {
            if maxu + maxv <= c + 1 {
                out.push((maxu, maxv));
            }
        }
    }
    out
}

/// Every condition with `c < d <= d_max`, ordered by `(d, c, maxu, maxv)`.
pub fn enumerate_conditions(d_max: usize, factors: &FactorTable) -> Result<Vec<CutCondition>> {
    let mut out = Vec::new();
    for d in 3..=d_max {
        for c in 3..d {
            for (maxu, maxv) in condition_shapes(c) {
                out.push(CutCondition::new(c, d, maxu, maxv, factors)?);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub total: usize,
    pub failures: Vec<usize>,
    /// Index and value of the smallest margin.
    pub min_margin: Option<(usize, BigRational)>,
}

impl ConditionReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify_conditions(conds: &[CutCondition]) -> ConditionReport {
    let failures = conds
        .iter()
        .enumerate()
        .filter(|(_, c)| c.margin < BigRational::zero())
        .map(|(i, _)| i)
        .collect();
    let min_margin = conds
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.margin.cmp(&b.1.margin))
        .map(|(i, c)| (i, c.margin.clone()));
    ConditionReport {
        total: conds.len(),
        failures,
        min_margin,
    }
}

/// Two cut edges with four distinct endpoints give `2 f_{2,d} - 2`, which
/// beats `f_{2,d}` iff `f_{2,d} >= 2`. Returns the failing `d` values.
pub fn two_cut_check(d_max: usize, factors: &FactorTable) -> Result<Vec<usize>> {
    let two = BigRational::from_integer(2.into());
    let mut bad = Vec::new();
    for d in 3..=d_max {
        if factors.get(2, d)? < two {
            bad.push(d);
        }
    }
    Ok(bad)
}

/// One line of the regenerated appendix.
pub fn condition_csv_row(cond: &CutCondition) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        cond.c,
        cond.d,
        cond.maxu,
        cond.maxv,
        cond.u_partition,
        cond.v_partition,
        cond.bound,
        rational_to_fixed(&cond.bound, 6),
        cond.margin,
        rational_to_fixed(&cond.margin, 6),
    )
}

pub const CONDITION_CSV_HEADER: &str =
    "c,d,maxu,maxv,u_partition,v_partition,bound,bound_6dp,margin,margin_6dp";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutCheck {
    Pass { sp: BigRational, rhs: BigRational },
    Fail { sp: BigRational, rhs: BigRational },
    Skip(String),
}

impl CutCheck {
    pub fn is_fail(&self) -> bool {
        matches!(self, CutCheck::Fail { .. })
    }
}

/// Checks `SP(G) >= f_{c,d} SP(G_1) SP(G_2)` on a concrete cut.
pub fn empirical_cut_check(
    g: &SimpleGraph,
    cut: &CutResult,
    d: usize,
    factors: &FactorTable,
) -> CutCheck {
    let side = cut.side_mask();
    let other = g.vertex_mask() & !side;
    let size = g.cut_size(side);
    if g.max_degree() > d {
        return CutCheck::Skip(format!("max degree {} exceeds {d}", g.max_degree()));
    }
    if size != cut.size {
        return CutCheck::Skip("cut size does not match its side".into());
    }
    if size == 0 || size >= d {
        return CutCheck::Skip(format!("cut size {size} outside 1..{d}"));
    }
    if side == 0 || other == 0 || !g.is_connected_within(side) || !g.is_connected_within(other) {
        return CutCheck::Skip("sides are not both connected".into());
    }
    let f = match factors.get(size, d) {
        Ok(f) => f,
        Err(e) => return CutCheck::Skip(e.to_string()),
    };
    let sp_of =
        |mask: u64| BigRational::from_integer(spanning_tree_count(&g.induced(mask).0).into());
    let sp = BigRational::from_integer(spanning_tree_count(g).into());
    let rhs = f * sp_of(side) * sp_of(other);
    if sp >= rhs {
        CutCheck::Pass { sp, rhs }
    } else {
        CutCheck::Fail { sp, rhs }
    }
}

/// `f_{1,d}`: a bridge multiplies the count by exactly one.
pub fn bridge_factor() -> BigRational {
    BigRational::one()
}
