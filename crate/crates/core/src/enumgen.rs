//! Isomorph-free generation of all graphs on `c` vertices with a maximum
//! degree cap, by canonical augmentation (one vertex at a time).
//!
//! A child `G + v` of a canonical parent `G` is kept only when `v` lies in
//! the automorphism orbit of the child's canonical deletion vertex (the
//! vertex placed first by [`canonical_labeling`](crate::canon)). Siblings are
//! then deduplicated by key, so each isomorphism class appears exactly once.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::canon::{labeling_from_refined, Adj, CanonicalGraph, Labeling, CANON_MAX_ORDER};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::io::to_graph6;

/// Largest order the generator accepts.
pub const GEN_MAX_ORDER: usize = 11;

/// One canonical parent with its packed code, kept between levels.
#[derive(Clone)]
struct Node {
    graph: SimpleGraph,
    code: u128,
}

/// All graphs on `c` vertices with every degree at most `max_deg`, one per
/// isomorphism class, sorted by canonical key.
pub fn generate_graphs(c: usize, max_deg: usize) -> Result<Vec<CanonicalGraph>> {
    check_order(c)?;
    let mut level = root_level();
    for _ in 1..c {
        level = next_level(&level, max_deg);
    }
    Ok(finish(level))
}

/// Class count without materialising the final level.
pub fn count_graphs(c: usize, max_deg: usize) -> Result<u64> {
    check_order(c)?;
    if c == 1 {
        return Ok(1);
    }
    let mut level = root_level();
    for _ in 1..c - 1 {
        level = next_level(&level, max_deg);
    }
    Ok(level
        .par_iter()
        .map(|p| children(p, max_deg).len() as u64)
        .sum())
}

/// Parallel map-reduce over every class on `c` vertices. The final level is
/// produced parent by parent and never stored whole; `reduce` must be
/// associative and commutative for the result to be schedule-independent.
pub fn map_reduce_graphs<T, M, R>(
    c: usize,
    max_deg: usize,
    identity: T,
    map: M,
    reduce: R,
) -> Result<T>
where
    T: Clone + Send + Sync,
    M: Fn(&CanonicalGraph) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    check_order(c)?;
    if c == 1 {
        let g = finish(root_level());
        return Ok(reduce(identity, map(&g[0])));
    }
    let mut level = root_level();
    for _ in 1..c - 1 {
        level = next_level(&level, max_deg);
    }
    Ok(level
        .par_iter()
        .map(|p| {
            children(p, max_deg)
                .into_iter()
                .map(|n| map(&to_canonical(n)))
                .fold(identity.clone(), &reduce)
        })
        .reduce(|| identity.clone(), &reduce))
}

fn check_order(c: usize) -> Result<()> {
    if c == 0 || c > GEN_MAX_ORDER {
        return Err(Error::Precondition(format!(
            "generation supports 1 <= c <= {GEN_MAX_ORDER}, got {c}"
        )));
    }
    Ok(())
}

fn root_level() -> Vec<Node> {
    vec![Node {
        graph: SimpleGraph::empty(1).expect("one vertex"),
        code: 0,
    }]
}

fn finish(level: Vec<Node>) -> Vec<CanonicalGraph> {
    let mut out: Vec<CanonicalGraph> = level.into_iter().map(to_canonical).collect();
    out.sort();
    out
}

fn to_canonical(node: Node) -> CanonicalGraph {
    let key = to_graph6(&node.graph);
    CanonicalGraph {
        graph: node.graph,
        key,
    }
}

fn next_level(level: &[Node], max_deg: usize) -> Vec<Node> {
    let mut next: Vec<Node> = level
        .par_iter()
        .flat_map_iter(|p| children(p, max_deg))
        .collect();
    next.par_sort_unstable_by_key(|n| n.code);
    next
}

/// Accepted children of one canonical parent, in canonical labelling.
fn children(parent: &Node, max_deg: usize) -> Vec<Node> {
    let g = &parent.graph;
    let n = g.n();
    let new = n;
    // vertices that can still take an edge
    let open: u64 = (0..n)
        .filter(|&u| g.degree(u) < max_deg)
        .fold(0, |m, u| m | 1 << u);
    let mut seen: HashSet<u128> = HashSet::new();
    let mut out = Vec::new();
    let mut child = g.clone();
    child.add_vertex().expect("order within limit");
    let mut subset = open;
    // iterate every subset of `open`, including the empty set
    loop {
        let s = subset;
        if (s.count_ones() as usize) <= max_deg {
            if let Some(lab) = accept(&mut child, s, new) {
                if seen.insert(lab.code) {
                    out.push(Node {
                        graph: child.relabel(&lab.position),
                        code: lab.code,
                    });
                }
            }
        }
        if subset == 0 {
            break;
        }
        subset = (subset - 1) & open;
    }
    out
}

/// Builds `child` with `new` joined to `s` and returns its labelling when
/// `new` is a canonical deletion vertex.
fn accept(child: &mut SimpleGraph, s: u64, new: usize) -> Option<Labeling> {
    for u in 0..new {
        child.remove_edge(u, new);
        if s >> u & 1 == 1 {
            child.add_edge(u, new).expect("valid edge");
        }
    }
    let deg = s.count_ones() as usize;
    if (0..new).any(|u| child.degree(u) < deg) {
        return None;
    }
    let adj = Adj::from_graph(child);
    let mut cells = vec![((1u32 << child.n()) - 1) as u16];
    adj.refine(&mut cells);
    if cells[0] >> new & 1 == 0 {
        return None;
    }
    let lab = labeling_from_refined(&adj, cells.clone());
    let first = lab.vertex_at(0);
    if first == new || same_orbit_known(&lab, first, new) {
        return Some(lab);
    }
    // decide orbit equality by colouring each candidate in turn
    let colored = |v: usize| -> u128 {
        let mut c = Vec::with_capacity(cells.len() + 1);
        c.push(1u16 << v);
        c.push(cells[0] & !(1 << v));
        c.extend_from_slice(&cells[1..]);
        adj.refine(&mut c);
        labeling_from_refined(&adj, c).code
    };
    (colored(first) == colored(new)).then_some(lab)
}

fn same_orbit_known(lab: &Labeling, a: usize, b: usize) -> bool {
    if lab.automorphisms.is_empty() {
        return false;
    }
    let n = lab.position.len();
    let mut orbit = vec![false; n];
    orbit[a] = true;
    let mut stack = vec![a];
    while let Some(x) = stack.pop() {
        for gamma in &lab.automorphisms {
            let y = gamma[x] as usize;
            if !orbit[y] {
                orbit[y] = true;
                stack.push(y);
            }
        }
    }
    orbit[b]
}

/// A slice of the generation tree: the descendants of the canonical parents
/// at `depth` vertices whose sorted index lies in `start..end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShardDescriptor {
    pub depth: usize,
    pub start: usize,
    pub end: usize,
}

impl fmt::Display for ShardDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "depth {}", self.depth)?;
        writeln!(f, "range {} {}", self.start, self.end)
    }
}

impl FromStr for ShardDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut depth = None;
        let mut range = None;
        for line in s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let num = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| Error::Shard(format!("bad number `{t}`")))
            };
            match parts.as_slice() {
                ["depth", d] => depth = Some(num(d)?),
                ["range", a, b] => range = Some((num(a)?, num(b)?)),
                _ => return Err(Error::Shard(format!("unrecognised line `{line}`"))),
            }
        }
        let depth = depth.ok_or_else(|| Error::Shard("missing depth".into()))?;
        let (start, end) = range.ok_or_else(|| Error::Shard("missing range".into()))?;
        if start > end {
            return Err(Error::Shard(format!("empty range {start}..{end}")));
        }
        Ok(ShardDescriptor { depth, start, end })
    }
}

/// Number of canonical parents available at `depth` (the shard index space).
pub fn shard_space(depth: usize, max_deg: usize) -> Result<usize> {
    Ok(generate_graphs(depth, max_deg)?.len())
}

/// Graphs on `c` vertices that descend from the shard's parents.
/// The union over a partition of `0..shard_space(depth)` is the full output
/// of [`generate_graphs`], with no overlaps.
pub fn generate_shard(
    c: usize,
    max_deg: usize,
    shard: ShardDescriptor,
) -> Result<Vec<CanonicalGraph>> {
    check_order(c)?;
    if shard.depth == 0 || shard.depth > c {
        return Err(Error::Shard(format!(
            "depth {} outside 1..={c}",
            shard.depth
        )));
    }
    let mut level = root_level();
    for _ in 1..shard.depth {
        level = next_level(&level, max_deg);
    }
    let end = shard.end.min(level.len());
    let start = shard.start.min(end);
    let mut level: Vec<Node> = level[start..end].to_vec();
    for _ in shard.depth..c {
        level = next_level(&level, max_deg);
    }
    Ok(finish(level))
}

const _: () = assert!(GEN_MAX_ORDER < CANON_MAX_ORDER);
