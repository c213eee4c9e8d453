//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Set `SPANBOUND_EXTENDED=1` to also compute the c = 9, 10 table cells.

mod common;

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Signed;
use rand::Rng;

use spanbound::cutlemma::{enumerate_conditions, two_cut_check, verify_conditions};
use spanbound::dissect::{dissect_graph, validate_trace};
use spanbound::factors::{
    apex_limit_graph, clique_extension_factor, factor_table, host_factor, Attachment, FactorSource,
    FactorTable,
};
use spanbound::hp::{rational_to_fixed, Real};
use spanbound::lp::{
    beta_bounds, beta_upper, build_lp, small_d_of, solve_lp, verify_certificate, LpOptions,
    LpStatus, Relation, Variant,
};
use spanbound::oracle::enumerate_spanning_trees;
use spanbound::{generate_graphs, spanning_tree_count, SimpleGraph, WeightedGraph};

const SEED: u64 = 20_231_107;

const TABLE1: [(usize, &[&str]); 9] = [
    (3, &["2.666667", "5.333333"]),
    (4, &["2.500000", "4.687500", "7.812500"]),
    (5, &["2.400000", "4.320000", "6.912000", "10.368000"]),
    (
        6,
        &["2.333333", "4.083333", "6.351852", "9.263117", "12.968364"],
    ),
    (
        7,
        &[
            "2.285714",
            "3.918367",
            "5.970845",
            "8.529779",
            "11.697983",
            "15.597311",
        ],
    ),
    (
        8,
        &[
            "2.250000",
            "3.796875",
            "5.695313",
            "8.009033",
            "10.812195",
            "14.191006",
            "18.24557",
        ],
    ),
    (
        9,
        &[
            "2.222222",
            "3.703704",
            "5.486968",
            "7.620790",
            "10.161053",
            "13.171735",
            "16.726013",
            "20.907516",
        ],
    ),
    (
        10,
        &[
            "2.200000",
            "3.630000",
            "5.324000",
            "7.320500",
            "9.663060",
            "12.400927",
            "15.589737",
            "19.292299",
            "23.579477",
        ],
    ),
    (
        11,
        &[
            "2.181818",
            "3.570248",
            "5.193088",
            "7.081484",
            "9.270306",
            "11.798571",
            "14.709907",
            "18.053067",
            "21.882506",
            "26.259007",
        ],
    ),
];

const UPPER_ROW: [&str; 8] = [
    "2.236068", "2.047672", "1.912931", "1.811447", "1.732051", "1.668100", "1.615394", "1.571140",
];
const LOWER_ROW: [&str; 8] = [
    "2.143571", "1.959762", "1.817549", "1.725940", "1.647326", "1.591588", "1.541248", "1.503335",
];

fn dec(s: &str) -> BigRational {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let den = BigInt::from(10u32).pow(frac.len() as u32);
    BigRational::new(format!("{int}{frac}").parse::<BigInt>().unwrap(), den)
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Printed cells are half-up rounded, except one that lost its last digit.
fn cell_matches(value: &BigRational, printed: &str) -> bool {
    let places = printed.split_once('.').map_or(0, |(_, f)| f.len());
    let rounded = rational_to_fixed(value, 6);
    if places == 6 {
        rounded == printed
    } else {
        rounded.starts_with(printed)
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn exact_counts() -> Outcome {
    for d in 2..=10u32 {
        let got = spanning_tree_count(&SimpleGraph::complete(d as usize + 1));
        if got != BigUint::from(d + 1).pow(d - 1) {
            return outcome(false, format!("K_{} gave {got}", d + 1));
        }
    }
    outcome(true, "SP(K_{d+1}) = (d+1)^(d-1) for d = 2..10")
}

fn oracle_equivalence() -> Outcome {
    let mut classes = 0;
    for n in 1..=6 {
        for g in generate_graphs(n, n - 1).unwrap() {
            let oracle = enumerate_spanning_trees(&g.graph).unwrap().len();
            if spanning_tree_count(&g.graph) != BigUint::from(oracle) {
                return outcome(false, format!("mismatch on {}", g.key));
            }
            classes += 1;
        }
    }
    let mut rng = common::rng(SEED);
    for i in 0..500 {
        let n = rng.gen_range(2..=10);
        let m = rng.gen_range(0..=20);
        let g = common::random_graph(&mut rng, n, m);
        let oracle = enumerate_spanning_trees(&g).unwrap().len();
        if spanning_tree_count(&g) != BigUint::from(oracle) {
            return outcome(false, format!("random case {i} mismatched"));
        }
    }
    outcome(
        true,
        format!("{classes} classes with n <= 6 and 500 random graphs"),
    )
}

fn extended() -> bool {
    std::env::var("SPANBOUND_EXTENDED").is_ok_and(|v| v == "1")
}

fn check_table(table: &FactorTable, c_max: usize) -> Result<usize, String> {
    let mut cells = 0;
    for (d, row) in TABLE1 {
        for (i, printed) in row.iter().enumerate() {
            let c = i + 2;
            if c > c_max {
                continue;
            }
            let e = table.entry(c, d).ok_or(format!("missing ({c},{d})"))?;
            if !cell_matches(&e.value, printed) {
                return Err(format!(
                    "({c},{d}) printed {printed}, computed {}",
                    rational_to_fixed(&e.value, 6)
                ));
            }
            let k_c = spanbound::canonical_form(&SimpleGraph::complete(c))
                .unwrap()
                .key;
            if e.source != FactorSource::Computed || e.argmin.as_deref() != Some(k_c.as_str()) {
                return Err(format!("({c},{d}) argmin is {:?}", e.argmin));
            }
            if e.value != spanbound::closed_form_f(c, d) {
                return Err(format!("({c},{d}) differs from the closed form"));
            }
            cells += 1;
        }
    }
    Ok(cells)
}

fn table1() -> Outcome {
    let table = factor_table(8, 11).unwrap();
    let mut detail = match check_table(&table, 8) {
        Ok(cells) => format!("{cells} cells with c <= 8 match, argmin K_c, closed form exact"),
        Err(e) => return outcome(false, e),
    };
    if extended() {
        let table = factor_table(10, 11).unwrap();
        match check_table(&table, 10) {
            Ok(cells) => detail.push_str(&format!("; extended run: {cells} cells with c <= 10")),
            Err(e) => return outcome(false, format!("extended run: {e}")),
        }
    } else {
        detail.push_str("; c = 9, 10 not run (set SPANBOUND_EXTENDED=1)");
    }
    outcome(true, detail)
}

fn desk_table() -> FactorTable {
    let mut t = factor_table(8, 11).unwrap();
    t.fill_closed_form(11);
    t
}

fn cut_conditions(table: &FactorTable) -> Outcome {
    let conds = enumerate_conditions(11, table).unwrap();
    let report = verify_conditions(&conds);
    let two = two_cut_check(11, table).unwrap();
    let (i, min) = report.min_margin.clone().unwrap();
    let c = &conds[i];
    let pass = conds.len() == 200 && report.pass() && two.is_empty();
    outcome(
        pass,
        format!(
            "{} conditions, {} negative margins, min margin {} at (c={}, d={}, maxu={}, maxv={}); 2-cut check failures: {:?}",
            conds.len(),
            report.failures.len(),
            rational_to_fixed(&min, 6),
            c.c,
            c.d,
            c.maxu,
            c.maxv,
            two
        ),
    )
}

fn printed_d10_rows() -> Vec<(Vec<i64>, Relation, i64)> {
    use Relation::*;
    vec![
        (vec![1, -1, 0, 0, 0, 0, 0, 0, 0, 0], Le, 0),
        (vec![2, 0, -2, 0, 0, 0, 0, 0, 0, 0], Le, 0),
        (vec![3, 0, -1, -3, 0, 0, 0, 0, 0, 0], Le, 0),
        (vec![4, 0, 0, -2, -4, 0, 0, 0, 0, 0], Le, 0),
        (vec![5, 0, 1, -1, -3, -5, 0, 0, 0, 0], Le, 0),
        (vec![6, 0, 2, 0, -2, -4, -6, 0, 0, 0], Le, 0),
        (vec![7, 0, 3, 1, -1, -3, -5, -7, 0, 0], Le, 0),
        (vec![8, 0, 4, 2, 0, -2, -4, -6, -8, 0], Le, 0),
        (vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9], Ge, 1),
        (vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 49], Le, 1),
    ]
}

const PRINTED_OBJECTIVE: [&str; 9] = [
    "0.788457", "1.289233", "1.672225", "1.990679", "2.268310", "2.517771", "2.746613", "2.959706",
    "3.160377",
];

fn lp_regression(table: &FactorTable) -> Outcome {
    let lp = build_lp(
        10,
        table,
        Variant::Basic,
        &LpOptions::for_variant(Variant::Basic),
    )
    .unwrap();
    let rows = printed_d10_rows();
    let rows_match = lp.rows.len() == rows.len()
        && lp.rows.iter().zip(&rows).all(|(r, (coeffs, rel, rhs))| {
            r.relation == *rel
                && r.rhs == q(*rhs)
                && r.coeffs.iter().zip(coeffs).all(|(a, &b)| *a == q(b))
        });
    let objective_match = lp.objective[1..]
        .iter()
        .zip(PRINTED_OBJECTIVE)
        .all(|(c, p)| rational_to_fixed(c, 6) == p);
    let sol = solve_lp(&lp);
    if sol.status != LpStatus::Optimal {
        return outcome(false, format!("status {:?}", sol.status));
    }
    let certified = verify_certificate(&lp, &sol);
    let within = (&sol.value - dec("0.366508")).abs() <= dec("0.000005");
    let e = Real::from_rational(&sol.value).exp();
    let exp_ok = e.certainly_ge(&(dec("1.44269") - dec("0.00001")));
    let support: Vec<&str> = sol
        .support()
        .iter()
        .map(|&i| lp.names[i].as_str())
        .collect();
    let support_ok = support.iter().all(|s| ["x1", "x9", "x10"].contains(s));
    outcome(
        rows_match && objective_match && certified && within && exp_ok && support_ok,
        format!(
            "rows match: {rows_match}, objective match: {objective_match}, optimum {} (exp {}), support {:?}, certificate {certified}",
            rational_to_fixed(&sol.value, 6),
            e.to_fixed(6),
            support
        ),
    )
}

fn upper_row() -> Outcome {
    let d3 = beta_upper(3).to_fixed(9) == Real::pow_rational(&q(16), 1, 3).to_fixed(9);
    let mut bad = Vec::new();
    for (i, printed) in UPPER_ROW.iter().enumerate() {
        let d = i + 4;
        let u = beta_upper(d);
        // the printed row mixes rounding and truncation at the sixth place
        let truncated = truncate_fixed(&u.lower(), 6);
        if u.to_fixed(6) != *printed && truncated != *printed {
            bad.push(format!("d={d}: {} vs {printed}", u.to_fixed(7)));
        }
    }
    outcome(
        d3 && bad.is_empty(),
        if bad.is_empty() {
            "9/9 values match".into()
        } else {
            bad.join(", ")
        },
    )
}

fn truncate_fixed(x: &BigRational, places: usize) -> String {
    let scale = BigRational::from_integer(BigInt::from(10u32).pow(places as u32));
    rational_to_fixed(&((x * &scale).floor() / scale), places)
}

fn lower_row(table: &FactorTable) -> Outcome {
    let b3 = beta_bounds(3, table).unwrap();
    let d3 = b3.lower.to_fixed(9) == Real::pow_rational(&q(16), 1, 3).to_fixed(9)
        && q(3) * table.get(3, 3).unwrap() == q(16);
    let mut parts = vec![format!("d=3: {}", b3.lower.to_fixed(6))];
    let mut ok = d3;
    for (i, printed) in LOWER_ROW.iter().enumerate() {
        let d = i + 4;
        let b = beta_bounds(d, table).unwrap();
        let pass = b.lower.certainly_ge(&(dec(printed) - dec("0.0001")));
        ok &= pass;
        parts.push(format!(
            "d={d}: {} vs {printed}{}",
            b.lower.to_fixed(6),
            if pass { "" } else { " (low)" }
        ));
    }
    outcome(ok, parts.join(", "))
}

fn small_d_list(table: &FactorTable) -> Outcome {
    let mut got = vec![small_d_of(3, &Real::pow_rational(&q(16), 1, 3).upper(), table).unwrap()];
    for (i, printed) in LOWER_ROW.iter().enumerate() {
        got.push(small_d_of(i + 4, &dec(printed), table).unwrap());
    }
    outcome(got == vec![2, 3, 3, 4, 4, 5, 5, 6, 7], format!("{got:?}"))
}

fn dissection_suite() -> Outcome {
    let table = factor_table(6, 6).unwrap();
    let mut rng = common::rng(SEED ^ 9);
    let mut regular = 0;
    for i in 0..500 {
        let d = rng.gen_range(3..=6);
        let n = rng.gen_range(1..=12);
        let g = common::random_connected_bounded(&mut rng, n, d);
        let trace = dissect_graph(&g, d).unwrap();
        let report = validate_trace(&g, &trace, &table);
        if !report.pass() {
            return outcome(false, format!("case {i} (d={d}, n={n}): {:?}", report));
        }
        regular += g.is_regular(d) as usize;
    }
    outcome(
        true,
        format!("500 graphs ({regular} d-regular): product, tallies and average-cut checks hold"),
    )
}

/// Returns (outcome, unexpected): the limit tolerance is a known failure.
fn monotonicity_and_limit() -> (Outcome, bool) {
    // adding an edge to the host, with the attachment set fixed
    let mut rng = common::rng(SEED ^ 10);
    let mut edge_ok = true;
    let one = || BigRational::from_integer(1.into());
    for case in 0..200 {
        let (host, attach, (u, v)) = if case % 2 == 0 {
            loop {
                let n = rng.gen_range(3..=9);
                let m = rng.gen_range(n - 1..=n * (n - 1) / 2 - 1);
                let g = common::random_graph(&mut rng, n, m);
                if !g.is_connected() {
                    continue;
                }
                let missing: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .filter(|&(u, v)| !g.has_edge(u, v))
                    .collect();
                let e = missing[rng.gen_range(0..missing.len())];
                let mut attach: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                if attach.is_empty() {
                    attach.push(0);
                }
                break (WeightedGraph::from_simple(&g), attach, e);
            }
        } else {
            {
                let c = rng.gen_range(2..=7);
                let m = rng.gen_range(0..c * (c - 1) / 2);
                let h = common::random_graph(&mut rng, c, m);
                let d = c + rng.gen_range(0..=3);
                let w = apex_limit_graph(&h, d).unwrap();
                let missing: Vec<(usize, usize)> = (0..c)
                    .flat_map(|u| (u + 1..c).map(move |v| (u, v)))
                    .filter(|&(u, v)| !h.has_edge(u, v))
                    .collect();
                let e = missing[rng.gen_range(0..missing.len())];
                (w.to_weighted(), (0..c).collect(), e)
            }
        };
        let before = host_factor(&host, &attach).unwrap();
        let mut grown = host.clone();
        grown.add_weight(u, v, one()).unwrap();
        edge_ok &= host_factor(&grown, &attach).unwrap() <= before;
    }
    let k2 = SimpleGraph::complete(2);
    let fk: Vec<BigRational> = (3..=8)
        .map(|k| clique_extension_factor(&k2, 3, k, Attachment::RoundRobin).unwrap())
        .collect();
    let mono = fk.windows(2).all(|w| w[1] <= w[0]);
    let target = BigRational::new(8.into(), 3.into());
    let f200 = clique_extension_factor(&k2, 3, 200, Attachment::RoundRobin).unwrap();
    let gap = &f200 - &target;
    let limit_ok = gap.abs() <= dec("0.000001");
    let detail = format!(
        "200 edge additions non-increasing: {edge_ok}; f(G_k) non-increasing for k = 3..8: {mono}; \
         f(G_200) - 8/3 = {} (tolerance 1e-6){}",
        rational_to_fixed(&gap, 9),
        if limit_ok { "" } else { " [known: the gap is 2/(3(3k+2)), under 1e-6 only from k = 222222]" }
    );
    let unexpected = !(edge_ok && mono) || limit_ok;
    (outcome(edge_ok && mono && limit_ok, detail), unexpected)
}

fn main() {
    let started = Instant::now();
    let table = desk_table();
    let mut unexpected = 0;
    let mut run = |name: &str, f: &mut dyn FnMut() -> (Outcome, bool)| {
        let t = Instant::now();
        let (o, bad) = f();
        println!(
            "{:<24} {}  ({:.1}s)  {}",
            name,
            if o.pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            o.detail
        );
        unexpected += bad as usize;
    };
    let plain = |o: Outcome| {
        let bad = !o.pass;
        (o, bad)
    };
    run("exact-counts", &mut || plain(exact_counts()));
    run("oracle-equivalence", &mut || plain(oracle_equivalence()));
    run("factor-table", &mut || plain(table1()));
    run("cut-conditions", &mut || plain(cut_conditions(&table)));
    run("lp-regression", &mut || plain(lp_regression(&table)));
    run("beta-upper-row", &mut || plain(upper_row()));
    run("beta-lower-row", &mut || plain(lower_row(&table)));
    run("small-d-list", &mut || plain(small_d_list(&table)));
    run("dissection-suite", &mut || plain(dissection_suite()));
    run("monotone-and-limit", &mut monotonicity_and_limit);
    println!(
        "total {:.1}s; unexpected results: {unexpected}",
        started.elapsed().as_secs_f64()
    );
    if unexpected > 0 {
        std::process::exit(1);
    }
}
