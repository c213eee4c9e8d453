//! Self-contained verification suite behind `verify-all`.

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use spanbound::cutlemma::{enumerate_conditions, two_cut_check, verify_conditions};
use spanbound::dissect::{dissect_graph, validate_trace};
use spanbound::factors::{
    clique_extension_factor, factor_table, host_factor, Attachment, FactorSource, FactorTable,
};
use spanbound::hp::rational_to_fixed;
use spanbound::lp::{
    beta_bounds, build_lp, solve_lp, verify_certificate, LpOptions, LpStatus, Variant,
};
use spanbound::oracle::enumerate_spanning_trees;
use spanbound::{
    canonical_form, closed_form_f, generate_graphs, spanning_tree_count, SimpleGraph, WeightedGraph,
};

use crate::random::{case_rng, random_connected_bounded, random_graph};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        pass,
        detail: detail.into(),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Scale {
    pub oracle_n: usize,
    pub random_cases: u64,
    pub table_c_max: usize,
}

impl Scale {
    pub fn new(fast: bool) -> Self {
        if fast {
            Scale {
                oracle_n: 5,
                random_cases: 100,
                table_c_max: 6,
            }
        } else {
            Scale {
                oracle_n: 6,
                random_cases: 500,
                table_c_max: 8,
            }
        }
    }
}

pub fn run_all(scale: Scale, seed: u64) -> Vec<Check> {
    let mut table = factor_table(scale.table_c_max, 11).expect("c_max <= 11");
    let computed = table_check(&table, scale.table_c_max);
    table.fill_closed_form(11);
    vec![
        exact_counts(),
        oracle(scale, seed),
        computed,
        cut_conditions(&table),
        lp_certificates(&table),
        dissection(scale, seed, &table),
        monotonicity(scale, seed),
    ]
}

fn exact_counts() -> Check {
    let bad: Vec<u32> = (2..=10u32)
        .filter(|&d| {
            spanning_tree_count(&SimpleGraph::complete(d as usize + 1))
                != BigUint::from(d + 1).pow(d - 1)
        })
        .collect();
    check(
        "exact-counts",
        bad.is_empty(),
        format!("K_(d+1) for d = 2..10, mismatches {bad:?}"),
    )
}

fn oracle(scale: Scale, seed: u64) -> Check {
    let mut classes = 0;
    for n in 1..=scale.oracle_n {
        for g in generate_graphs(n, n - 1).expect("small order") {
            let trees = enumerate_spanning_trees(&g.graph)
                .expect("within oracle limit")
                .len();
            if spanning_tree_count(&g.graph) != BigUint::from(trees) {
                return check("oracle-equivalence", false, format!("class {}", g.key));
            }
            classes += 1;
        }
    }
    let bad: Vec<u64> = (0..scale.random_cases)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = case_rng(seed, i);
            let n = rng.gen_range(2..=10);
            let m = rng.gen_range(0..=20);
            let g = random_graph(&mut rng, n, m);
            let trees = enumerate_spanning_trees(&g).expect("m <= 20").len();
            spanning_tree_count(&g) != BigUint::from(trees)
        })
        .collect();
    check(
        "oracle-equivalence",
        bad.is_empty(),
        format!(
            "{classes} classes, {} random graphs, failing cases {bad:?}",
            scale.random_cases
        ),
    )
}

fn table_check(table: &FactorTable, c_max: usize) -> Check {
    let mut cells = 0;
    for ((c, d), e) in table.iter() {
        let key = canonical_form(&SimpleGraph::complete(c))
            .expect("small order")
            .key;
        let ok = e.source == FactorSource::Computed
            && e.value == closed_form_f(c, d)
            && e.value > BigRational::from_integer(c.into())
            && e.argmin.as_deref() == Some(key.as_str());
        if !ok {
            return check(
                "factor-table",
                false,
                format!("cell ({c},{d}) = {}", rational_to_fixed(&e.value, 6)),
            );
        }
        cells += 1;
    }
    check(
        "factor-table",
        true,
        format!("{cells} computed cells, c <= {c_max}, minimised by K_c"),
    )
}

fn cut_conditions(table: &FactorTable) -> Check {
    let conds = match enumerate_conditions(11, table) {
        Ok(c) => c,
        Err(e) => return check("cut-conditions", false, e.to_string()),
    };
    let report = verify_conditions(&conds);
    let two = two_cut_check(11, table).unwrap_or_else(|_| vec![usize::MAX]);
    let min = report
        .min_margin
        .as_ref()
        .map(|(_, m)| rational_to_fixed(m, 6))
        .unwrap_or_default();
    check(
        "cut-conditions",
        report.pass() && two.is_empty(),
        format!(
            "{} conditions, {} negative, min margin {min}, 2-cut failures {}",
            conds.len(),
            report.failures.len(),
            two.len()
        ),
    )
}

fn lp_certificates(table: &FactorTable) -> Check {
    let mut problems = Vec::new();
    for d in 3..=11 {
        let mut values = Vec::new();
        for variant in [Variant::Basic, Variant::Improved] {
            let lp = match build_lp(d, table, variant, &LpOptions::for_variant(variant)) {
                Ok(lp) => lp,
                Err(e) => {
                    problems.push(format!("d={d} {variant}: {e}"));
                    continue;
                }
            };
            let sol = solve_lp(&lp);
            if sol.status != LpStatus::Optimal || !verify_certificate(&lp, &sol) {
                problems.push(format!("d={d} {variant}: {:?}", sol.status));
            }
            values.push(sol.value);
        }
        if values.len() == 2 && values[1] < values[0] {
            problems.push(format!("d={d}: improved below basic"));
        }
        match beta_bounds(d, table) {
            Ok(b) if b.lower.try_cmp(&b.upper) == Some(std::cmp::Ordering::Greater) => {
                problems.push(format!("d={d}: lower bound above upper"))
            }
            Ok(_) => {}
            Err(e) => problems.push(format!("d={d}: {e}")),
        }
    }
    let detail = if problems.is_empty() {
        "d = 3..11: optimal, certified, improved >= basic, lower <= upper".to_string()
    } else {
        problems.join("; ")
    };
    check("lp-certificates", problems.is_empty(), detail)
}

fn dissection(scale: Scale, seed: u64, table: &FactorTable) -> Check {
    let failures: Vec<String> = (0..scale.random_cases)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = case_rng(seed ^ 0xd155, i);
            let d = rng.gen_range(3..=6);
            let n = rng.gen_range(1..=12);
            let g = random_connected_bounded(&mut rng, n, d);
            let trace = match dissect_graph(&g, d) {
                Ok(t) => t,
                Err(e) => return Some(format!("case {i}: {e}")),
            };
            let report = validate_trace(&g, &trace, table);
            (!report.pass()).then(|| format!("case {i}: {:?}", report.messages))
        })
        .collect();
    check(
        "dissection-suite",
        failures.is_empty(),
        format!(
            "{} graphs, {} failing {}",
            scale.random_cases,
            failures.len(),
            failures.join("; ")
        )
        .trim_end()
        .to_string(),
    )
}

fn monotonicity(scale: Scale, seed: u64) -> Check {
    let bad: Vec<u64> = (0..scale.random_cases)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = case_rng(seed ^ 0x0e06e, i);
            loop {
                let n = rng.gen_range(3..=9);
                let m = rng.gen_range(n - 1..n * (n - 1) / 2);
                let g = random_graph(&mut rng, n, m);
                if !g.is_connected() {
                    continue;
                }
                let missing: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .filter(|&(u, v)| !g.has_edge(u, v))
                    .collect();
                let (u, v) = missing[rng.gen_range(0..missing.len())];
                let mut attach: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                if attach.is_empty() {
                    attach.push(0);
                }
                let host = WeightedGraph::from_simple(&g);
                let mut grown = host.clone();
                grown
                    .add_weight(u, v, BigRational::from_integer(1.into()))
                    .expect("in range");
                return host_factor(&grown, &attach).expect("connected")
                    > host_factor(&host, &attach).expect("connected");
            }
        })
        .collect();
    let k2 = SimpleGraph::complete(2);
    let limit = BigRational::new(8.into(), 3.into());
    let fk: Vec<BigRational> = (3..=12)
        .chain([200])
        .map(|k| clique_extension_factor(&k2, 3, k, Attachment::RoundRobin).expect("k >= 3"))
        .collect();
    let mono = fk.windows(2).all(|w| w[1] <= w[0]) && fk.iter().all(|f| *f > limit);
    check(
        "monotonicity",
        bad.is_empty() && mono,
        format!(
            "{} host edge additions, {} increases; f(G_k) decreasing towards 8/3 for k = 3..12 and 200: {mono}",
            scale.random_cases,
            bad.len()
        ),
    )
}
