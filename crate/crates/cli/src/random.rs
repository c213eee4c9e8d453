use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spanbound::SimpleGraph;

/// Independent stream `case` of the generator seeded by `seed`, so that
/// cases can run on any worker and still see the same graphs.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

pub fn random_graph(rng: &mut impl Rng, n: usize, m: usize) -> SimpleGraph {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    pairs.truncate(m);
    SimpleGraph::from_edges(n, pairs).expect("pairs are in range")
}

/// Random tree with degrees at most `d`, plus random extra edges that keep
/// the bound. Needs `d >= 2` once `n > 2`.
pub fn random_connected_bounded(rng: &mut impl Rng, n: usize, d: usize) -> SimpleGraph {
    let mut g = SimpleGraph::empty(n).expect("small order");
    for v in 1..n {
        let open: Vec<usize> = (0..v).filter(|&u| g.degree(u) < d).collect();
        let u = *open.choose(rng).expect("a vertex below the degree bound");
        g.add_edge(u, v).expect("fresh edge");
    }
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    pairs.shuffle(rng);
    let extra = rng.gen_range(0..=pairs.len());
    for (u, v) in pairs.into_iter().take(extra) {
        if g.degree(u) < d && g.degree(v) < d {
            g.add_edge(u, v).expect("fresh edge");
        }
    }
    g
}
