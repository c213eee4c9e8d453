//! Linear programs bounding `ln beta_d` from the cut tallies of a dissection.
//!
//! Variable `x_c` is the number of `c`-cuts divided by the excess. The
//! objective weights each cut by `ln f_{c,d}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use super::simplex::{solve_lp, LinearProgram, LpSolution, LpStatus, Relation};
use crate::error::{Error, Result};
use crate::factors::FactorTable;
use crate::hp::Real;

/// Objective coefficients are rounded down to this denominator.
pub const OBJECTIVE_DENOMINATOR: u64 = 1_000_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularExcess {
    pub d: usize,
    pub n_min: usize,
    pub min_excess: usize,
}

/// Smallest excess of a `d`-regular graph other than `K_{d+1}`.
pub fn min_regular_excess(d: usize) -> Result<RegularExcess> {
    if !(3..=11).contains(&d) {
        return Err(Error::Precondition(format!("d = {d} outside 3..=11")));
    }
    let n_min = if d.is_multiple_of(2) { d + 2 } else { d + 3 };
    Ok(RegularExcess {
        d,
        n_min,
        min_excess: d * n_min / 2 - n_min + 1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    Basic,
    Improved,
    NonRegular,
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "basic" => Ok(Variant::Basic),
            "improved" => Ok(Variant::Improved),
            "nonregular" | "non-regular" => Ok(Variant::NonRegular),
            _ => Err(Error::Precondition(format!("unknown variant {s:?}"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Basic => "basic",
            Variant::Improved => "improved",
            Variant::NonRegular => "nonregular",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpOptions {
    /// Adds `sum x_c >= (n_min - 1) / min_excess`.
    pub include_sum_row: bool,
    /// Keeps `x_2` in average-cut rows even where its coefficient is positive.
    pub keep_positive_x2: bool,
    /// Adds `x_2'` (the final cycle-splitting 2-cuts, multiplier 3).
    pub split_x2: bool,
    /// Non-regular variant: average-cut rows kept for `k <= small_d + 1`.
    pub small_d: Option<usize>,
}

impl LpOptions {
    /// Defaults for each variant. The improved program carries the sum row
    /// and the full average-cut rows; the basic one is the bare system.
    pub fn for_variant(variant: Variant) -> Self {
        match variant {
            Variant::Basic => LpOptions {
                include_sum_row: false,
                keep_positive_x2: false,
                split_x2: false,
                small_d: None,
            },
            Variant::Improved => LpOptions {
                include_sum_row: true,
                keep_positive_x2: true,
                split_x2: true,
                small_d: None,
            },
            Variant::NonRegular => LpOptions {
                include_sum_row: false,
                keep_positive_x2: false,
                split_x2: false,
                small_d: None,
            },
        }
    }
}

/// `ln q` rounded down to a multiple of `1 / OBJECTIVE_DENOMINATOR`.
pub fn ln_floor(q: &BigRational) -> BigRational {
    Real::ln_rational(q).floor_to_denominator(&BigInt::from(OBJECTIVE_DENOMINATOR))
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

/// Builds the program for degree bound `d`.
pub fn build_lp(
    d: usize,
    factors: &FactorTable,
    variant: Variant,
    options: &LpOptions,
) -> Result<LinearProgram> {
    let excess = min_regular_excess(d)?;
    let split = options.split_x2 && variant != Variant::NonRegular;
    let mut names: Vec<String> = (1..=d).map(|c| format!("x{c}")).collect();
    let mut objective = vec![BigRational::zero()];
    for c in 2..=d {
        objective.push(ln_floor(&factors.get(c, d)?));
    }
    let x2p = if split {
        names.push("x2'".into());
        objective.push(ln_floor(&int(3)));
        Some(d)
    } else {
        None
    };
    let width = names.len();
    let mut lp = LinearProgram::new(names, objective);
    let xi = |c: usize| c - 1;

    let last_avg = match variant {
        Variant::NonRegular => {
            let s = options
                .small_d
                .ok_or_else(|| Error::Precondition("non-regular program needs small_d".into()))?;
            (s + 1).min(d - 1)
        }
        _ => d - 1,
    };
    for k in 2..=last_avg {
        let mut row = vec![BigRational::zero(); width];
        for j in 1..=k {
            let a = k as i64 + 1 - 2 * j as i64;
            if j == 2 && a > 0 && !options.keep_positive_x2 {
                continue;
            }
            row[xi(j)] = int(a);
            if j == 2 {
                if let Some(p) = x2p {
                    row[p] = int(a);
                }
            }
        }
        lp.add_row(format!("avg{k}"), row, Relation::Le, BigRational::zero());
    }

    let mut row = vec![BigRational::zero(); width];
    for c in 1..=d {
        row[xi(c)] = int(c as i64 - 1);
    }
    if let Some(p) = x2p {
        row[p] = int(1);
    }
    lp.add_row("excess", row, Relation::Ge, int(1));

    let mut row = vec![BigRational::zero(); width];
    match variant {
        Variant::NonRegular => {
            row[xi(d)] = int(1);
            lp.add_row("no-d-cut", row, Relation::Eq, BigRational::zero());
        }
        _ => {
            row[xi(d)] = int(excess.min_excess as i64);
            lp.add_row("d-cut", row, Relation::Le, int(1));
        }
    }

    if let Some(p) = x2p {
        let mut row = vec![BigRational::zero(); width];
        row[p] = int(1);
        row[xi(d)] = int(-1);
        lp.add_row("cycle-split", row, Relation::Ge, BigRational::zero());
    }

    if options.include_sum_row && variant != Variant::NonRegular {
        let mut row = vec![int(1); width];
        if x2p.is_none() {
            row.truncate(d);
        }
        let rhs = BigRational::new(
            BigInt::from(excess.n_min - 1),
            BigInt::from(excess.min_excess),
        );
        lp.add_row("cut-count", row, Relation::Ge, rhs);
    }
    Ok(lp)
}

/// Largest `s` with `f_{c,d} >= bound^(c-1)` for every `2 <= c <= s`.
pub fn small_d_of(d: usize, bound: &BigRational, factors: &FactorTable) -> Result<usize> {
    if *bound <= BigRational::one() {
        return Err(Error::Precondition("claimed bound must exceed 1".into()));
    }
    let mut s = 1;
    for c in 2..=d {
        let power: BigRational = Pow::pow(bound, (c - 1) as u32);
        if factors.get(c, d)? >= power {
            s = c;
        } else {
            break;
        }
    }
    Ok(s)
}

#[derive(Clone, Debug)]
pub struct BetaBounds {
    pub d: usize,
    pub lower: Real,
    pub upper: Real,
    /// Certified optimum of the improved program, when one was solved.
    pub lp_value: Option<BigRational>,
}

/// `(d+1)^(2/d)`, the value at `K_{d+1}`.
pub fn beta_upper(d: usize) -> Real {
    Real::pow_rational(&int(d as i64 + 1), 2, d as i64)
}

/// Lower bound from the improved program; for `d = 3` the exact
/// identities `3 f_{3,3} = 16` and `f_{2,3}^3 > 16` give `16^(1/3)`.
pub fn beta_bounds(d: usize, factors: &FactorTable) -> Result<BetaBounds> {
    let upper = beta_upper(d);
    if d == 3 {
        let f2 = factors.get(2, 3)?;
        let f3 = factors.get(3, 3)?;
        if int(3) * f3 != int(16) || Pow::pow(&f2, 3u32) <= int(16) {
            return Err(Error::Precondition(
                "the d = 3 identities do not hold for this table".into(),
            ));
        }
        return Ok(BetaBounds {
            d,
            lower: Real::pow_rational(&int(16), 1, 3),
            upper,
            lp_value: None,
        });
    }
    let lp = build_lp(
        d,
        factors,
        Variant::Improved,
        &LpOptions::for_variant(Variant::Improved),
    )?;
    let sol = solve_lp(&lp);
    if sol.status != LpStatus::Optimal {
        return Err(Error::MalformedLp(format!(
            "improved program for d = {d} is {:?}",
            sol.status
        )));
    }
    Ok(BetaBounds {
        d,
        lower: Real::from_rational(&sol.value).exp(),
        upper,
        lp_value: Some(sol.value),
    })
}

/// Solves and returns `(solution, exp(optimum))`.
pub fn solve_and_exponentiate(lp: &LinearProgram) -> (LpSolution, Option<Real>) {
    let sol = solve_lp(lp);
    let e = (sol.status == LpStatus::Optimal).then(|| Real::from_rational(&sol.value).exp());
    (sol, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    #[test]
    fn excess_values() {
        assert_eq!(min_regular_excess(10).unwrap().min_excess, 49);
        assert_eq!(min_regular_excess(10).unwrap().n_min, 12);
        assert_eq!(min_regular_excess(3).unwrap().min_excess, 4);
        assert_eq!(min_regular_excess(4).unwrap().min_excess, 7);
        assert!(min_regular_excess(12).is_err());
    }

    #[test]
    fn circulant_witnesses() {
        for d in 3..=11 {
            let e = min_regular_excess(d).unwrap();
            let mut steps: Vec<usize> = (1..=(d / 2)).collect();
            if d % 2 == 1 {
                steps.push(e.n_min / 2);
            }
            let g = SimpleGraph::circulant(e.n_min, &steps);
            assert!(g.is_regular(d), "d = {d}");
            assert!(g.is_connected());
            assert_eq!(g.m() + 1 - g.n(), e.min_excess);
        }
    }

    #[test]
    fn d3_basic_rows() {
        let lp = build_lp(
            3,
            &FactorTable::closed_form(3),
            Variant::Basic,
            &LpOptions::for_variant(Variant::Basic),
        )
        .unwrap();
        assert_eq!(
            lp.to_string().lines().skip(1).take(3).collect::<Vec<_>>(),
            vec![
                "  avg2: x1 -x2 <= 0",
                "  excess: x2 +2*x3 >= 1",
                "  d-cut: 4*x3 <= 1",
            ]
        );
    }

    #[test]
    fn ln_rounding_is_downward() {
        let c = ln_floor(&BigRational::new(11.into(), 5.into()));
        assert!(Real::ln_rational(&BigRational::new(11.into(), 5.into())).certainly_ge(&c));
        assert_eq!(crate::hp::rational_to_fixed(&c, 6), "0.788457");
    }

    #[test]
    fn small_d_examples() {
        let t = FactorTable::closed_form(11);
        let b = BigRational::new(25198.into(), 10000.into());
        assert_eq!(small_d_of(3, &b, &t).unwrap(), 2);
        let b = BigRational::new(1503335.into(), 1000000.into());
        assert_eq!(small_d_of(11, &b, &t).unwrap(), 7);
    }
}
