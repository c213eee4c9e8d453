//! Vertex-addition multipliers.
//!
//! For a host graph `G` with distinguished vertices `u_1..u_c`, the
//! multiplier is `f(G) = SP(G') / SP(G)` where `G'` adds a vertex `v`
//! adjacent to every `u_i`. Its minimum over hosts of maximum degree `d`
//! only depends on the subgraph `H` induced on the `u_i` through the apex
//! limit graph `W`: `H` plus one vertex `w` joined to each `u_i` with weight
//! `d - 1 - deg_H(u_i)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::canon::CanonicalGraph;
use crate::count::{integer_tree_sum, weighted_tree_sum};
use crate::enumgen::{generate_graphs, map_reduce_graphs};
use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, WeightedGraph};

/// `H` together with the apex weights of its limit graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApexLimitGraph {
    pub base: SimpleGraph,
    pub d: usize,
    /// `d - 1 - deg_H(u_i)` per base vertex.
    pub apex_weights: Vec<usize>,
}

impl ApexLimitGraph {
    /// `false` exactly when every apex weight is zero (`H = K_d`).
    pub fn has_apex(&self) -> bool {
        self.apex_weights.iter().any(|&w| w > 0)
    }

    /// Vertex count of `W`.
    pub fn order(&self) -> usize {
        self.base.n() + self.has_apex() as usize
    }

    fn integer_edges(&self) -> Vec<(usize, usize, i64)> {
        let c = self.base.n();
        let mut edges: Vec<(usize, usize, i64)> = self
            .base
            .edges()
            .into_iter()
            .map(|(u, v)| (u, v, 1))
            .collect();
        if self.has_apex() {
            for (u, &w) in self.apex_weights.iter().enumerate() {
                if w > 0 {
                    edges.push((u, c, w as i64));
                }
            }
        }
        edges
    }

    /// `W` as a weighted graph; the apex, when present, is vertex `c`.
    pub fn to_weighted(&self) -> WeightedGraph {
        WeightedGraph::from_weighted_edges(
            self.order(),
            self.integer_edges()
                .into_iter()
                .map(|(u, v, w)| (u, v, BigRational::from_integer(w.into()))),
        )
        .expect("limit graph edges are valid")
    }

    /// `W + v`: the new vertex (last index) joined to every base vertex.
    pub fn with_new_vertex(&self) -> WeightedGraph {
        let mut g = self.to_weighted();
        let v = g.add_vertex();
        for u in 0..self.base.n() {
            g.add_weight(u, v, BigRational::one()).expect("valid edge");
        }
        g
    }

    /// `SP(W + v) / SP(W)` via integer determinants.
    pub fn factor(&self) -> BigRational {
        let n = self.order();
        let mut edges = self.integer_edges();
        let before = integer_tree_sum(n, &edges);
        for u in 0..self.base.n() {
            edges.push((u, n, 1));
        }
        let after = integer_tree_sum(n + 1, &edges);
        BigRational::new(after, before)
    }
}

pub fn apex_limit_graph(h: &SimpleGraph, d: usize) -> Result<ApexLimitGraph> {
    let c = h.n();
    if c == 0 {
        return Err(Error::Precondition(
            "H must have at least one vertex".into(),
        ));
    }
    if c > d {
        return Err(Error::Precondition(format!("c = {c} exceeds d = {d}")));
    }
    if h.max_degree() + 1 > d {
        return Err(Error::Precondition(format!(
            "max degree {} of H exceeds d - 1 = {}",
            h.max_degree(),
            d - 1
        )));
    }
    let apex_weights: Vec<usize> = (0..c).map(|u| d - 1 - h.degree(u)).collect();
    let w = ApexLimitGraph {
        base: h.clone(),
        d,
        apex_weights,
    };
    if !w.to_weighted().is_connected() {
        return Err(Error::Precondition("limit graph W is disconnected".into()));
    }
    Ok(w)
}

/// `f(W)` for the limit graph of `H` at degree bound `d`.
pub fn factor_of_subgraph(h: &SimpleGraph, d: usize) -> Result<BigRational> {
    Ok(apex_limit_graph(h, d)?.factor())
}

/// `c ((d+1)/d)^(c-1)`.
pub fn closed_form_f(c: usize, d: usize) -> BigRational {
    let ratio = BigRational::new(BigInt::from(d + 1), BigInt::from(d));
    let mut f = BigRational::from_integer(c.into());
    for _ in 1..c {
        f *= &ratio;
    }
    f
}

/// Multiplier of an arbitrary host: `SP(G + v) / SP(G)` with `v` joined to
/// every vertex in `attach`.
pub fn host_factor(g: &WeightedGraph, attach: &[usize]) -> Result<BigRational> {
    let before = weighted_tree_sum(g);
    if before.is_zero() {
        return Err(Error::NotConnected);
    }
    let mut h = g.clone();
    let v = h.add_vertex();
    for &u in attach {
        h.add_weight(u, v, BigRational::one())?;
    }
    Ok(weighted_tree_sum(&h) / before)
}

/// How the `u_i`'s edges into the clique are distributed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Attachment {
    /// Cycle a shared pointer over the clique vertices.
    RoundRobin,
    /// Every `u_i` uses clique vertices `0, 1, ...` (maximal sharing).
    Packed,
}

/// `H` plus a `k`-clique, with `d - 1 - deg_H(u_i)` edges from each `u_i`
/// into the clique (at most one per clique vertex). Vertices `0..c` are the
/// `u_i`, `c..c+k` the clique. Returned with unit weights since `k` may
/// exceed the simple-graph order limit.
pub fn clique_extension(h: &SimpleGraph, d: usize, k: usize) -> Result<WeightedGraph> {
    clique_extension_with(h, d, k, Attachment::RoundRobin)
}

pub fn clique_extension_with(
    h: &SimpleGraph,
    d: usize,
    k: usize,
    rule: Attachment,
) -> Result<WeightedGraph> {
    let c = h.n();
    if h.max_degree() + 1 > d {
        return Err(Error::Precondition(format!(
            "max degree {} of H exceeds d - 1 = {}",
            h.max_degree(),
            d - 1
        )));
    }
    let need: Vec<usize> = (0..c).map(|u| d - 1 - h.degree(u)).collect();
    if let Some(&worst) = need.iter().max() {
        if worst > k {
            return Err(Error::CliqueTooSmall { k, needed: worst });
        }
    }
    let one = BigRational::one;
    let mut g = WeightedGraph::empty(c + k);
    for (u, v) in h.edges() {
        g.add_weight(u, v, one())?;
    }
    for a in 0..k {
        for b in a + 1..k {
            g.add_weight(c + a, c + b, one())?;
        }
    }
    let mut next = 0;
    for (u, &r) in need.iter().enumerate() {
        for j in 0..r {
            let target = match rule {
                Attachment::RoundRobin => {
                    let t = next;
                    next = (next + 1) % k;
                    t
                }
                Attachment::Packed => j,
            };
            g.add_weight(u, c + target, one())?;
        }
    }
    Ok(g)
}

/// `f(G_k)` for the clique extension of `H`.
pub fn clique_extension_factor(
    h: &SimpleGraph,
    d: usize,
    k: usize,
    rule: Attachment,
) -> Result<BigRational> {
    let g = clique_extension_with(h, d, k, rule)?;
    let attach: Vec<usize> = (0..h.n()).collect();
    host_factor(&g, &attach)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FactorSource {
    /// Minimised over the exhaustive subgraph enumeration.
    Computed,
    /// Filled from `c ((d+1)/d)^(c-1)`.
    ClosedForm,
    /// Set by hand (tests, fault injection).
    Manual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorEntry {
    pub value: BigRational,
    /// Canonical key of the minimising `H`, when computed.
    pub argmin: Option<String>,
    pub source: FactorSource,
    /// Number of subgraphs examined.
    pub candidates: u64,
}

/// `f_{c,d}` for `2 <= c <= d <= d_max`; `f_{1,d} = 1` implicitly.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorTable {
    pub d_max: usize,
    entries: BTreeMap<(usize, usize), FactorEntry>,
}

impl FactorTable {
    pub fn new(d_max: usize) -> Self {
        FactorTable {
            d_max,
            entries: BTreeMap::new(),
        }
    }

    /// Every cell `2 <= c <= d <= d_max` from the closed form.
    pub fn closed_form(d_max: usize) -> Self {
        let mut t = FactorTable::new(d_max);
        t.fill_closed_form(d_max);
        t
    }

    /// Fills absent cells up to `d_max` from the closed form.
    pub fn fill_closed_form(&mut self, d_max: usize) {
        self.d_max = self.d_max.max(d_max);
        for d in 2..=d_max {
            for c in 2..=d {
                self.entries.entry((c, d)).or_insert_with(|| FactorEntry {
                    value: closed_form_f(c, d),
                    argmin: None,
                    source: FactorSource::ClosedForm,
                    candidates: 0,
                });
            }
        }
    }

    pub fn set(&mut self, c: usize, d: usize, value: BigRational) {
        self.d_max = self.d_max.max(d);
        self.entries.insert(
            (c, d),
            FactorEntry {
                value,
                argmin: None,
                source: FactorSource::Manual,
                candidates: 0,
            },
        );
    }

    pub fn entry(&self, c: usize, d: usize) -> Option<&FactorEntry> {
        self.entries.get(&(c, d))
    }

    /// `f_{c,d}`, with `f_{1,d} = 1`.
    pub fn get(&self, c: usize, d: usize) -> Result<BigRational> {
        if c == 1 {
            return Ok(BigRational::one());
        }
        self.entries
            .get(&(c, d))
            .map(|e| e.value.clone())
            .ok_or(Error::TableCoverage { c, d })
    }

    pub fn contains(&self, c: usize, d: usize) -> bool {
        c == 1 || self.entries.contains_key(&(c, d))
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &FactorEntry)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }
}

/// Running minimum per `d`, keyed for a deterministic tie-break.
#[derive(Clone)]
struct Best {
    value: BigRational,
    key: String,
}

fn better(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            if (&a.value, &a.key) <= (&b.value, &b.key) {
                Some(a)
            } else {
                Some(b)
            }
        }
    }
}

/// Minimises `f(W)` over every `H` on `c` vertices (all degrees below `d`)
/// for each `d` in `ds`. Returns `(d, value, argmin key, candidates)`.
pub fn minimise_over_subgraphs(
    c: usize,
    ds: &[usize],
) -> Result<Vec<(usize, BigRational, String, u64)>> {
    if ds.is_empty() {
        return Ok(Vec::new());
    }
    let d_min = *ds.iter().min().expect("nonempty");
    if c > d_min {
        return Err(Error::Precondition(format!("c = {c} exceeds d = {d_min}")));
    }
    // all degrees are at most c - 1 <= d - 1, so no cap beyond c - 1 applies
    let cap = c - 1;
    type Acc = (Vec<Option<Best>>, u64);
    let identity: Acc = (vec![None; ds.len()], 0);
    let map = |g: &CanonicalGraph| -> Acc {
        let per_d = ds
            .iter()
            .map(|&d| {
                let value = factor_of_subgraph(&g.graph, d)
                    .expect("H satisfies the limit-graph preconditions");
                Some(Best {
                    value,
                    key: g.key.clone(),
                })
            })
            .collect();
        (per_d, 1)
    };
    let reduce = |a: Acc, b: Acc| -> Acc {
        let merged =
            a.0.into_iter()
                .zip(b.0)
                .map(|(x, y)| better(x, y))
                .collect();
        (merged, a.1 + b.1)
    };
    let (best, count) = if c <= 8 {
        // small levels: materialise and fold sequentially in key order
        generate_graphs(c, cap)?
            .iter()
            .map(map)
            .fold(identity, reduce)
    } else {
        map_reduce_graphs(c, cap, identity, map, reduce)?
    };
    Ok(ds
        .iter()
        .zip(best)
        .map(|(&d, b)| {
            let b = b.expect("at least one subgraph");
            (d, b.value, b.key, count)
        })
        .collect())
}

/// Table of `f_{c,d}` for `2 <= c <= min(c_max, d)`, `2 <= d <= d_max`.
pub fn factor_table(c_max: usize, d_max: usize) -> Result<FactorTable> {
    if c_max > d_max || d_max > 11 {
        return Err(Error::Precondition(format!(
            "need c_max <= d_max <= 11, got c_max = {c_max}, d_max = {d_max}"
        )));
    }
    let mut table = FactorTable::new(d_max);
    for c in 2..=c_max {
        let ds: Vec<usize> = (c..=d_max).collect();
        for (d, value, key, candidates) in minimise_over_subgraphs(c, &ds)? {
            table.entries.insert(
                (c, d),
                FactorEntry {
                    value,
                    argmin: Some(key),
                    source: FactorSource::Computed,
                    candidates,
                },
            );
        }
    }
    Ok(table)
}
