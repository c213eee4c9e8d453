//! Global minimum edge cuts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BitIter, SimpleGraph};

/// An edge cut given by one side of a vertex bipartition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutResult {
    pub size: usize,
    /// Vertices on one side, sorted ascending.
    pub side: Vec<usize>,
}

impl CutResult {
    pub fn side_mask(&self) -> u64 {
        self.side.iter().fold(0, |m, &v| m | 1 << v)
    }

    /// The cut edges `(u, v)` with `u` on `side`.
    pub fn edges(&self, g: &SimpleGraph) -> Vec<(usize, usize)> {
        let side = self.side_mask();
        let mut out = Vec::new();
        for u in BitIter(side) {
            out.extend(BitIter(g.neighbors_mask(u) & !side).map(|v| (u, v)));
        }
        out
    }
}

/// Stoer-Wagner minimum cut on the vertices in `within`.
///
/// Returns `(size, side)` with `side` a proper nonempty subset of `within`.
pub fn stoer_wagner_within(g: &SimpleGraph, within: u64) -> Option<(usize, u64)> {
    let verts: Vec<usize> = BitIter(within).collect();
    let k = verts.len();
    if k < 2 {
        return None;
    }
    let mut w = vec![vec![0usize; k]; k];
    for (i, &u) in verts.iter().enumerate() {
        for (j, &v) in verts.iter().enumerate() {
            if g.has_edge(u, v) {
                w[i][j] = 1;
            }
        }
    }
    // members[i]: original vertices merged into super-vertex i
    let mut members: Vec<u64> = verts.iter().map(|&v| 1u64 << v).collect();
    let mut active: Vec<usize> = (0..k).collect();
    let mut best: Option<(usize, u64)> = None;
    while active.len() > 1 {
        let mut added = vec![false; k];
        let mut conn = vec![0usize; k];
        let mut prev = active[0];
        added[prev] = true;
        for &v in &active {
            conn[v] = w[prev][v];
        }
        let mut last = prev;
        for _ in 1..active.len() {
            let next = *active
                .iter()
                .filter(|&&v| !added[v])
                .max_by(|&&a, &&b| conn[a].cmp(&conn[b]).then(b.cmp(&a)))
                .expect("vertex left to add");
            added[next] = true;
            prev = last;
            last = next;
            for &v in &active {
                if !added[v] {
                    conn[v] += w[next][v];
                }
            }
        }
        let cut_of_phase = conn[last];
        if best.is_none_or(|(s, _)| cut_of_phase < s) {
            best = Some((cut_of_phase, members[last]));
        }
        // merge last into prev
        members[prev] |= members[last];
        for &v in &active {
            w[prev][v] += w[last][v];
            w[v][prev] = w[prev][v];
        }
        w[prev][prev] = 0;
        active.retain(|&v| v != last);
    }
    best
}

/// A global minimum edge cut of a connected graph.
pub fn min_cut(g: &SimpleGraph) -> Result<CutResult> {
    if g.n() < 2 {
        return Err(Error::NoCut(g.n()));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let (size, side) = stoer_wagner_within(g, g.vertex_mask()).expect("n >= 2");
    Ok(CutResult {
        size,
        side: BitIter(side).collect(),
    })
}

/// Exhaustive minimum over every bipartition of `within`.
/// Only for small vertex sets; the cost is `2^(k-1)` cut evaluations.
pub fn brute_force_min_cut(g: &SimpleGraph, within: u64) -> Option<usize> {
    let verts: Vec<usize> = BitIter(within).collect();
    let k = verts.len();
    if k < 2 {
        return None;
    }
    let anchor = 1u64 << verts[0];
    let rest = &verts[1..];
    let mut best = usize::MAX;
    for bits in 0u64..(1 << rest.len()) - 1 {
        let mut side = anchor;
        for (i, &v) in rest.iter().enumerate() {
            if bits >> i & 1 == 1 {
                side |= 1 << v;
            }
        }
        let size = BitIter(side)
            .map(|u| (g.neighbors_mask(u) & within & !side).count_ones() as usize)
            .sum();
        best = best.min(size);
    }
    Some(best)
}
