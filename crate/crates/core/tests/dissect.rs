mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use spanbound::cut::brute_force_min_cut;
use spanbound::dissect::{dissect_graph, multiplier_product, validate_trace};
use spanbound::factors::{factor_table, FactorTable};
use spanbound::hp::Real;
use spanbound::{cyclomatic, spanning_tree_count, SimpleGraph};

fn table() -> FactorTable {
    factor_table(6, 6).unwrap()
}

fn mask(vs: &[usize]) -> u64 {
    vs.iter().fold(0, |m, &v| m | 1 << v)
}

#[test]
fn chosen_cuts_are_minimum_and_global() {
    let mut rng = common::rng(41);
    for _ in 0..200 {
        let d = rng.gen_range(3..=6);
        let n = rng.gen_range(2..=10);
        let g = common::random_connected_bounded(&mut rng, n, d);
        let trace = dissect_graph(&g, d).unwrap();
        // replay the trace, checking each cut against every live component
        let mut live = vec![g.vertex_mask()];
        for step in &trace.steps {
            let (a, b) = (mask(&step.sides.0), mask(&step.sides.1));
            let parent = a | b;
            let pos = live
                .iter()
                .position(|&m| m == parent)
                .expect("cut of a live component");
            assert_eq!(brute_force_min_cut(&g, parent), Some(step.size));
            for &other in &live {
                if other.count_ones() >= 2 {
                    assert!(brute_force_min_cut(&g, other).unwrap() >= step.size);
                }
            }
            assert!(g.is_connected_within(a) && g.is_connected_within(b));
            live.swap_remove(pos);
            live.push(a);
            live.push(b);
        }
        assert!(live.iter().all(|m| m.count_ones() == 1));
    }
}

#[test]
fn traces_are_deterministic() {
    let mut rng = common::rng(42);
    for _ in 0..50 {
        let g = common::random_connected_bounded(&mut rng, 10, 4);
        assert_eq!(dissect_graph(&g, 4).unwrap(), dissect_graph(&g, 4).unwrap());
    }
}

#[test]
fn d_cut_first_only_for_regular_graphs() {
    let mut rng = common::rng(43);
    for _ in 0..300 {
        let d = rng.gen_range(3..=5);
        let n = rng.gen_range(2..=10);
        let g = common::random_connected_bounded(&mut rng, n, d);
        let trace = dissect_graph(&g, d).unwrap();
        if trace.steps.first().is_some_and(|s| s.size == d) {
            assert!(g.is_regular(d));
        }
        assert!(trace.steps.iter().skip(1).all(|s| s.size < d));
    }
    let petersen = SimpleGraph::from_edges(
        10,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
        ],
    )
    .unwrap();
    assert_eq!(dissect_graph(&petersen, 3).unwrap().steps[0].size, 3);
}

#[test]
fn c4_product() {
    let t = table();
    let trace = dissect_graph(&SimpleGraph::cycle(4), 3).unwrap();
    let p = multiplier_product(&trace, &t).unwrap();
    assert_eq!(p, BigRational::new(8.into(), 3.into()));
    assert!(BigRational::from_integer(4.into()) >= p);
    let path = dissect_graph(&SimpleGraph::path(5), 3).unwrap();
    assert_eq!(
        multiplier_product(&path, &t).unwrap(),
        BigRational::from_integer(1.into())
    );
}

#[test]
fn beta_dominates_the_product_bound() {
    let t = table();
    let mut rng = common::rng(44);
    let mut checked = 0;
    while checked < 200 {
        let d = rng.gen_range(3..=6);
        let n = rng.gen_range(3..=12);
        let g = common::random_connected_bounded(&mut rng, n, d);
        let mu = cyclomatic(&g).unwrap();
        if mu == 0 {
            continue;
        }
        let trace = dissect_graph(&g, d).unwrap();
        let report = validate_trace(&g, &trace, &t);
        assert!(report.pass(), "{report:?}");
        let p = multiplier_product(&trace, &t).unwrap();
        let sp = BigRational::from_integer(BigInt::from(spanning_tree_count(&g)));
        let beta = Real::ln_rational(&sp).div_int(mu as i64).exp();
        let bound = Real::ln_rational(&p).div_int(mu as i64).exp();
        assert!(beta.try_cmp(&bound) != Some(std::cmp::Ordering::Less));
        checked += 1;
    }
}

#[test]
fn missing_factor_is_reported() {
    let t = factor_table(2, 3).unwrap();
    let trace = dissect_graph(&SimpleGraph::complete(4), 3).unwrap();
    assert!(multiplier_product(&trace, &t).is_err());
    let report = validate_trace(&SimpleGraph::complete(4), &trace, &t);
    assert!(!report.pass());
}
