#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spanbound::SimpleGraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform graph on `n` vertices with exactly `min(m, C(n,2))` edges.
pub fn random_graph(rng: &mut impl Rng, n: usize, m: usize) -> SimpleGraph {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    pairs.truncate(m);
    SimpleGraph::from_edges(n, pairs).unwrap()
}

/// Connected graph on `n` vertices with maximum degree at most `d`: a
/// random degree-bounded tree plus a random number of extra edges.
pub fn random_connected_bounded(rng: &mut impl Rng, n: usize, d: usize) -> SimpleGraph {
    assert!(d >= 2 || n <= 2);
    let mut g = SimpleGraph::empty(n).unwrap();
    for v in 1..n {
        let open: Vec<usize> = (0..v).filter(|&u| g.degree(u) < d).collect();
        let u = *open.choose(rng).unwrap();
        g.add_edge(u, v).unwrap();
    }
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    pairs.shuffle(rng);
    let extra = rng.gen_range(0..=pairs.len());
    for (u, v) in pairs.into_iter().take(extra) {
        if g.degree(u) < d && g.degree(v) < d {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Random relabeling of `g`.
pub fn shuffled(rng: &mut impl Rng, g: &SimpleGraph) -> SimpleGraph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}
