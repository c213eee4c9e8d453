//! Small undirected graphs: a bitset-backed simple graph and an
//! exact-rational weighted graph used for limit graphs and contractions.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported order; adjacency rows are `u64` bitsets.
pub const MAX_ORDER: usize = 64;

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::TooManyVertices { n, max: MAX_ORDER });
        }
        Ok(SimpleGraph { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list; duplicate edges are merged.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n).expect("order within limit");
        for u in 0..n {
            for v in u + 1..n {
                g.insert(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n).expect("order within limit");
        for u in 1..n {
            g.insert(u - 1, u);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.insert(0, n - 1);
        }
        g
    }

    /// Circulant graph: `u ~ u ± s (mod n)` for every `s` in `steps`.
    pub fn circulant(n: usize, steps: &[usize]) -> Self {
        let mut g = Self::empty(n).expect("order within limit");
        for u in 0..n {
            for &s in steps {
                let v = (u + s) % n;
                if u != v {
                    g.insert(u, v);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let fresh = !self.has_edge(u, v);
        self.insert(u, v);
        Ok(fresh)
    }

    fn insert(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    /// Adds an isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> Result<usize> {
        if self.n == MAX_ORDER {
            return Err(Error::TooManyVertices {
                n: self.n + 1,
                max: MAX_ORDER,
            });
        }
        self.adj.push(0);
        self.n += 1;
        Ok(self.n - 1)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Neighbourhood of `u` as a bitset.
    #[inline]
    pub fn neighbors_mask(&self, u: usize) -> u64 {
        self.adj[u]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.adj[u])
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).min().unwrap_or(0)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.n).all(|u| self.degree(u) == d)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n {
            let higher = self.adj[u] & !low_mask(u + 1);
            out.extend(BitIter(higher).map(|v| (u, v)));
        }
        out
    }

    /// Mask with every vertex set.
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for u in BitIter(frontier) {
                next |= self.adj[u];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// True iff the vertices in `mask` induce a connected subgraph.
    pub fn is_connected_within(&self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        self.reach(mask.trailing_zeros() as usize, mask) == mask
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.is_connected_within(self.vertex_mask())
    }

    /// Connected components as vertex masks, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let comp = self.reach(left.trailing_zeros() as usize, left);
            out.push(comp);
            left &= !comp;
        }
        out
    }

    /// Number of edges with exactly one endpoint in `side`.
    pub fn cut_size(&self, side: u64) -> usize {
        BitIter(side)
            .map(|u| (self.adj[u] & !side).count_ones() as usize)
            .sum()
    }

    /// Subgraph induced on `mask`, with vertices renumbered in increasing order.
    /// Returns the subgraph and the original index of each new vertex.
    pub fn induced(&self, mask: u64) -> (SimpleGraph, Vec<usize>) {
        let verts: Vec<usize> = BitIter(mask & self.vertex_mask()).collect();
        let mut index = [usize::MAX; MAX_ORDER];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let mut h = SimpleGraph::empty(verts.len()).expect("subgraph order within limit");
        for (i, &v) in verts.iter().enumerate() {
            for w in BitIter(self.adj[v] & mask) {
                h.adj[i] |= 1 << index[w];
            }
        }
        (h, verts)
    }

    /// Relabels vertices: vertex `u` becomes `perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> SimpleGraph {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let mut h = SimpleGraph::empty(self.n).expect("same order");
        for (u, v) in self.edges() {
            h.insert(perm[u], perm[v]);
        }
        h
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> Result<SimpleGraph> {
        let mut g = SimpleGraph::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.insert(u, v);
        }
        for (u, v) in other.edges() {
            g.insert(u + self.n, v + self.n);
        }
        Ok(g)
    }

    /// Cyclomatic number `m - n + c` where `c` is the number of components.
    pub fn excess_unchecked(&self) -> usize {
        self.m() + self.components().len() - self.n
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Serialize for SimpleGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            edges: Vec<(usize, usize)>,
        }
        Repr {
            n: self.n,
            edges: self.edges(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimpleGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            edges: Vec<(usize, usize)>,
        }
        let r = Repr::deserialize(d)?;
        SimpleGraph::from_edges(r.n, r.edges).map_err(serde::de::Error::custom)
    }
}

#[inline]
pub(crate) fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Iterates the set bits of a mask, lowest first.
#[derive(Clone, Copy)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Undirected graph with positive exact-rational edge weights.
///
/// Parallel edges are represented by summing their weights into one entry,
/// which is how contraction of a simple graph is absorbed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), BigRational>,
}

impl WeightedGraph {
    pub fn empty(n: usize) -> Self {
        WeightedGraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    /// Builds a weighted graph; repeated pairs accumulate, zero weights vanish.
    pub fn from_weighted_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, BigRational)>,
    ) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v, w) in edges {
            g.add_weight(u, v, w)?;
        }
        Ok(g)
    }

    pub fn from_simple(g: &SimpleGraph) -> Self {
        let edges = g
            .edges()
            .into_iter()
            .map(|e| (e, BigRational::one()))
            .collect();
        WeightedGraph { n: g.n(), edges }
    }

    /// Adds `w` to the weight of edge `{u, v}`.
    pub fn add_weight(&mut self, u: usize, v: usize, w: BigRational) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if w.is_negative() {
            return Err(Error::InvalidWeight { u, v });
        }
        if w.is_zero() {
            return Ok(());
        }
        let key = (u.min(v), u.max(v));
        *self.edges.entry(key).or_insert_with(BigRational::zero) += w;
        Ok(())
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct weighted edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&BigRational> {
        self.edges.get(&(u.min(v), u.max(v)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.edges.iter().map(|(&(u, v), w)| (u, v, w))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        let mut parts = self.n;
        for (u, v, _) in self.edges() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                parts -= 1;
            }
        }
        parts == 1
    }

    /// Deletes edge `{u, v}` entirely (all parallel copies).
    pub fn delete(&self, u: usize, v: usize) -> WeightedGraph {
        let mut h = self.clone();
        h.edges.remove(&(u.min(v), u.max(v)));
        h
    }

    /// Contracts `{u, v}` into a single vertex. The merged vertex keeps the
    /// smaller index; vertices above the larger index shift down by one.
    /// Edges between `u` and `v` disappear, and parallel edges created by the
    /// merge sum their weights.
    pub fn contract(&self, u: usize, v: usize) -> WeightedGraph {
        let (keep, gone) = (u.min(v), u.max(v));
        let map = |x: usize| -> usize {
            if x == gone {
                keep
            } else if x > gone {
                x - 1
            } else {
                x
            }
        };
        let mut h = WeightedGraph::empty(self.n - 1);
        for (a, b, w) in self.edges() {
            let (a, b) = (map(a), map(b));
            if a != b {
                h.add_weight(a, b, w.clone())
                    .expect("contracted edge is valid");
            }
        }
        h
    }
}

pub(crate) fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}
