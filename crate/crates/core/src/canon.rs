//! Canonical labelling for graphs on at most 16 vertices.
//!
//! Equitable partition refinement plus individualisation, keeping the leaf
//! whose relabelled adjacency bit string (graph6 order, first bit most
//! significant) is largest. Branches are pruned with twin transpositions and
//! with automorphisms discovered at equal leaves.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::io::to_graph6;

pub const CANON_MAX_ORDER: usize = 16;

/// A graph in canonical labelling together with its key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalGraph {
    pub graph: SimpleGraph,
    /// graph6 encoding of `graph`; equal keys iff isomorphic.
    pub key: String,
}

impl PartialOrd for CanonicalGraph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalGraph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

/// Result of a canonical labelling search.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `position[v]` is the canonical index of vertex `v`.
    pub position: Vec<usize>,
    /// Packed upper-triangle bits of the relabelled graph.
    pub code: u128,
    /// Automorphisms met during the search (as vertex maps); not
    /// necessarily a generating set of the full group.
    pub automorphisms: Vec<Vec<u8>>,
}

impl Labeling {
    pub fn vertex_at(&self, pos: usize) -> usize {
        self.position
            .iter()
            .position(|&p| p == pos)
            .expect("bijection")
    }
}

/// Dense adjacency for the search.
#[derive(Clone, Copy)]
pub(crate) struct Adj {
    n: usize,
    rows: [u16; CANON_MAX_ORDER],
}

impl Adj {
    pub(crate) fn from_graph(g: &SimpleGraph) -> Adj {
        let mut rows = [0u16; CANON_MAX_ORDER];
        for (u, row) in rows.iter_mut().enumerate().take(g.n()) {
            *row = g.neighbors_mask(u) as u16;
        }
        Adj { n: g.n(), rows }
    }

    fn code(&self, order: &[u8]) -> u128 {
        // order[pos] = vertex
        let mut code = 0u128;
        for j in 1..self.n {
            let row = self.rows[order[j] as usize];
            for &vi in &order[..j] {
                code = (code << 1) | (row >> vi & 1) as u128;
            }
        }
        code
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        (self.rows[u] & !(1 << v)) == (self.rows[v] & !(1 << u))
    }

    /// Refines an ordered partition to the coarsest equitable one below it.
    pub(crate) fn refine(&self, cells: &mut Vec<u16>) {
        let mut scratch: Vec<u16> = Vec::with_capacity(self.n);
        loop {
            let mut changed = false;
            let mut s = 0;
            while s < cells.len() {
                let splitter = cells[s];
                scratch.clear();
                for &cell in cells.iter() {
                    if cell.count_ones() == 1 {
                        scratch.push(cell);
                        continue;
                    }
                    // bucket by neighbour count in the splitter, ascending
                    let mut buckets = [0u16; CANON_MAX_ORDER + 1];
                    let mut used = 0u32;
                    let mut rest = cell;
                    while rest != 0 {
                        let v = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        let k = (self.rows[v] & splitter).count_ones() as usize;
                        buckets[k] |= 1 << v;
                        used |= 1 << k;
                    }
                    while used != 0 {
                        let k = used.trailing_zeros() as usize;
                        used &= used - 1;
                        scratch.push(buckets[k]);
                    }
                }
                if scratch.len() != cells.len() {
                    changed = true;
                    std::mem::swap(cells, &mut scratch);
                }
                s += 1;
            }
            if !changed {
                break;
            }
        }
    }
}

struct Search<'a> {
    adj: &'a Adj,
    best: Option<(u128, Vec<u8>)>,
    autos: Vec<Vec<u8>>,
}

impl Search<'_> {
    fn run(&mut self, cells: Vec<u16>, prefix: &mut Vec<u8>) {
        let Some(t) = cells.iter().position(|c| c.count_ones() > 1) else {
            let order: Vec<u8> = cells.iter().map(|c| c.trailing_zeros() as u8).collect();
            let code = self.adj.code(&order);
            match &self.best {
                Some((best, best_order)) if code == *best => {
                    // vertex order[p] -> best_order[p]
                    let mut gamma = vec![0u8; self.adj.n];
                    for p in 0..self.adj.n {
                        gamma[order[p] as usize] = best_order[p];
                    }
                    if gamma.iter().enumerate().any(|(i, &x)| i != x as usize) {
                        self.autos.push(gamma);
                    }
                }
                Some((best, _)) if code < *best => {}
                _ => self.best = Some((code, order)),
            }
            return;
        };
        let cell = cells[t];
        let mut tried: Vec<usize> = Vec::new();
        let mut rest = cell;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if tried.iter().any(|&u| self.adj.twins(u, v)) || self.equivalent(v, &tried, prefix) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(1 << v);
            child.push(cell & !(1 << v));
            child.extend_from_slice(&cells[t + 1..]);
            self.adj.refine(&mut child);
            prefix.push(v as u8);
            self.run(child, prefix);
            prefix.pop();
            tried.push(v);
        }
    }

    /// Is `v` in the orbit of an already tried vertex under the known
    /// automorphisms that fix the prefix pointwise?
    fn equivalent(&self, v: usize, tried: &[usize], prefix: &[u8]) -> bool {
        if tried.is_empty() || self.autos.is_empty() {
            return false;
        }
        let n = self.adj.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gamma in &self.autos {
            if prefix.iter().all(|&x| gamma[x as usize] == x) {
                for (x, &y) in gamma.iter().enumerate() {
                    let (a, b) = (root(&mut parent, x), root(&mut parent, y as usize));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let rv = root(&mut parent, v);
        tried.iter().any(|&u| root(&mut parent, u) == rv)
    }
}

/// Canonical labelling of `g` starting from an ordered vertex partition.
/// Each cell is a vertex bitmask; the cells must partition `0..n`.
pub fn canonical_labeling_with(g: &SimpleGraph, initial: &[u16]) -> Result<Labeling> {
    if g.n() > CANON_MAX_ORDER {
        return Err(Error::TooManyVertices {
            n: g.n(),
            max: CANON_MAX_ORDER,
        });
    }
    let adj = Adj::from_graph(g);
    let mut cells: Vec<u16> = initial.iter().copied().filter(|&c| c != 0).collect();
    adj.refine(&mut cells);
    Ok(labeling_from_refined(&adj, cells))
}

pub(crate) fn labeling_from_refined(adj: &Adj, cells: Vec<u16>) -> Labeling {
    let n = adj.n;
    if n == 0 {
        return Labeling {
            position: Vec::new(),
            code: 0,
            automorphisms: Vec::new(),
        };
    }
    let mut search = Search {
        adj,
        best: None,
        autos: Vec::new(),
    };
    search.run(cells, &mut Vec::new());
    let (code, order) = search.best.expect("search visits at least one leaf");
    let mut position = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        position[v as usize] = p;
    }
    Labeling {
        position,
        code,
        automorphisms: search.autos,
    }
}

pub fn canonical_labeling(g: &SimpleGraph) -> Result<Labeling> {
    let all = if g.n() == 0 { 0 } else { (1u32 << g.n()) - 1 };
    canonical_labeling_with(g, &[all as u16])
}

pub fn canonical_form(g: &SimpleGraph) -> Result<CanonicalGraph> {
    let lab = canonical_labeling(g)?;
    let graph = g.relabel(&lab.position);
    let key = to_graph6(&graph);
    Ok(CanonicalGraph { graph, key })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn key(g: &SimpleGraph) -> String {
        canonical_form(g).unwrap().key
    }

    #[test]
    fn relabelled_paths_match() {
        let a = SimpleGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let b = SimpleGraph::from_edges(3, [(1, 0), (0, 2)]).unwrap();
        assert_eq!(key(&a), key(&b));
        assert_ne!(key(&a), key(&SimpleGraph::complete(3)));
    }

    #[test]
    fn k4_key_stable_under_relabelling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let k4 = SimpleGraph::complete(4);
        let want = key(&k4);
        let mut perm: Vec<usize> = (0..4).collect();
        for _ in 0..1000 {
            perm.shuffle(&mut rng);
            assert_eq!(key(&k4.relabel(&perm)), want);
        }
    }

    #[test]
    fn symmetric_graphs_are_fast_and_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
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
        for g in [
            petersen,
            SimpleGraph::empty(16).unwrap(),
            SimpleGraph::complete(16),
            SimpleGraph::cycle(16),
            SimpleGraph::circulant(12, &[1, 5]),
        ] {
            let want = key(&g);
            let mut perm: Vec<usize> = (0..g.n()).collect();
            for _ in 0..50 {
                perm.shuffle(&mut rng);
                assert_eq!(key(&g.relabel(&perm)), want);
            }
        }
    }

    #[test]
    fn distinguishes_cospectral_like_pairs() {
        // C6 versus two disjoint triangles: both 2-regular on six vertices
        let c6 = SimpleGraph::cycle(6);
        let tt = SimpleGraph::complete(3)
            .disjoint_union(&SimpleGraph::complete(3))
            .unwrap();
        assert_ne!(key(&c6), key(&tt));
    }

    #[test]
    fn size_guard() {
        assert!(canonical_form(&SimpleGraph::empty(17).unwrap()).is_err());
    }
}
