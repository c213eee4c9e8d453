//! Dissection: repeatedly remove a globally minimum cut until every
//! component is a single vertex, then compare the spanning-tree count with
//! the product of the cut multipliers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::count::spanning_tree_count;
use crate::cut::stoer_wagner_within;
use crate::error::{Error, Result};
use crate::factors::FactorTable;
use crate::graph::{BitIter, SimpleGraph};

/// Components up to this order break ties between minimum cuts exactly by
/// exhaustive search; larger ones take the Stoer-Wagner cut.
pub const EXACT_TIE_BREAK_MAX: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DissectionStep {
    /// Id of the component being cut; the input graph is component 0.
    pub component: usize,
    pub size: usize,
    /// Ids assigned to the two pieces.
    pub pieces: (usize, usize),
    /// Vertex sets of the pieces, each sorted.
    pub sides: (Vec<usize>, Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DissectionTrace {
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub steps: Vec<DissectionStep>,
    /// `tallies[c]` is the number of cuts of size `c`, for `c` in `0..=d`.
    pub tallies: Vec<usize>,
}

impl DissectionTrace {
    pub fn sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().map(|s| s.size)
    }
}

fn mask_vertices(mask: u64) -> Vec<usize> {
    BitIter(mask).collect()
}

/// Ordering key for a cut: the smaller side as a sorted vertex list; equal
/// sizes use the lesser of the two lists.
fn side_key(a: u64, b: u64) -> Vec<usize> {
    let (va, vb) = (mask_vertices(a), mask_vertices(b));
    match va.len().cmp(&vb.len()) {
        std::cmp::Ordering::Less => va,
        std::cmp::Ordering::Greater => vb,
        std::cmp::Ordering::Equal => va.min(vb),
    }
}

/// Minimum cut of the component `mask` as `(size, key, side)`.
fn best_cut(g: &SimpleGraph, mask: u64) -> (usize, Vec<usize>, u64) {
    let k = mask.count_ones() as usize;
    if k > EXACT_TIE_BREAK_MAX {
        let (size, side) = stoer_wagner_within(g, mask).expect("component has two vertices");
        return (size, side_key(side, mask & !side), side);
    }
    let verts = mask_vertices(mask);
    let anchor = verts[0];
    let rest: Vec<usize> = verts[1..].to_vec();
    let mut best: Option<(usize, Vec<usize>, u64)> = None;
    // sides containing the lowest vertex; the complement is the other side
    for bits in 0..(1u64 << rest.len()) - 1 {
        let mut side = 1u64 << anchor;
        for (i, &v) in rest.iter().enumerate() {
            if bits >> i & 1 == 1 {
                side |= 1 << v;
            }
        }
        let other = mask & !side;
        let size: usize = BitIter(side)
            .map(|v| (g.neighbors_mask(v) & other).count_ones() as usize)
            .sum();
        if let Some((bs, _, _)) = &best {
            if size > *bs {
                continue;
            }
        }
        let key = side_key(side, other);
        let better = match &best {
            None => true,
            Some((bs, bk, _)) => size < *bs || (size == *bs && key < *bk),
        };
        if better {
            best = Some((size, key, side));
        }
    }
    best.expect("component has two vertices")
}

/// Dissects `g` under the global minimum-cut rule.
pub fn dissect_graph(g: &SimpleGraph, d: usize) -> Result<DissectionTrace> {
    if g.max_degree() > d {
        return Err(Error::Precondition(format!(
            "max degree {} exceeds d = {d}",
            g.max_degree()
        )));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let mut live: Vec<(usize, u64)> = vec![(0, g.vertex_mask())];
    let mut next_id = 1;
    let mut steps = Vec::new();
    let mut tallies = vec![0; d + 1];
    loop {
        let mut choice: Option<(usize, Vec<usize>, u64, usize)> = None;
        for (slot, &(_, mask)) in live.iter().enumerate() {
            if mask.count_ones() < 2 {
                continue;
            }
            let (size, key, side) = best_cut(g, mask);
            let better = match &choice {
                None => true,
                Some((cs, ck, _, _)) => size < *cs || (size == *cs && key < *ck),
            };
            if better {
                choice = Some((size, key, side, slot));
            }
        }
        let Some((size, _, side, slot)) = choice else {
            break;
        };
        let (id, mask) = live.swap_remove(slot);
        let other = mask & !side;
        if !g.is_connected_within(side) || !g.is_connected_within(other) {
            return Err(Error::Precondition(format!(
                "minimum cut of component {id} left a disconnected side"
            )));
        }
        let (a, b) = if side_key(side, 0) <= side_key(other, 0) {
            (side, other)
        } else {
            (other, side)
        };
        steps.push(DissectionStep {
            component: id,
            size,
            pieces: (next_id, next_id + 1),
            sides: (mask_vertices(a), mask_vertices(b)),
        });
        tallies[size] += 1;
        live.push((next_id, a));
        live.push((next_id + 1, b));
        next_id += 2;
        live.sort_unstable_by_key(|&(id, _)| id);
    }
    Ok(DissectionTrace {
        d,
        n: g.n(),
        m: g.m(),
        steps,
        tallies,
    })
}

/// Exact product of `f_{size,d}` over the cuts of the trace.
pub fn multiplier_product(trace: &DissectionTrace, factors: &FactorTable) -> Result<BigRational> {
    let mut p = BigRational::one();
    for s in &trace.steps {
        p *= factors.get(s.size, trace.d)?;
    }
    Ok(p)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub spanning_trees: String,
    pub product: String,
    pub product_ok: bool,
    pub tallies_ok: bool,
    pub first_cut_ok: bool,
    /// `(step, k, later smaller cut count, their size sum)` where the
    /// average fell below `k/2`.
    pub average_cut_violations: Vec<(usize, usize, usize, usize)>,
    pub messages: Vec<String>,
}

impl TraceReport {
    pub fn pass(&self) -> bool {
        self.product_ok
            && self.tallies_ok
            && self.first_cut_ok
            && self.average_cut_violations.is_empty()
    }
}

/// For each cut of size `k`, the later cuts smaller than `k` must average
/// at least `k/2`. Returns the violations.
pub fn average_cut_violations(sizes: &[usize]) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for (i, &k) in sizes.iter().enumerate() {
        let later: Vec<usize> = sizes[i + 1..].iter().copied().filter(|&s| s < k).collect();
        let sum: usize = later.iter().sum();
        if 2 * sum < k * later.len() {
            out.push((i, k, later.len(), sum));
        }
    }
    out
}

pub fn validate_trace(
    g: &SimpleGraph,
    trace: &DissectionTrace,
    factors: &FactorTable,
) -> TraceReport {
    let mut r = TraceReport::default();
    let sp = BigInt::from(spanning_tree_count(g));
    r.spanning_trees = sp.to_string();
    match multiplier_product(trace, factors) {
        Ok(p) => {
            r.product = p.to_string();
            r.product_ok = BigRational::from_integer(sp) >= p;
            if !r.product_ok {
                r.messages.push(format!(
                    "SP = {} is below the product {}",
                    r.spanning_trees, r.product
                ));
            }
        }
        Err(e) => r.messages.push(e.to_string()),
    }
    let cuts: usize = trace.tallies.iter().sum();
    let weighted: usize = trace.tallies.iter().enumerate().map(|(c, n)| c * n).sum();
    let counted = trace.tallies.len() > trace.d
        && trace.steps.len() == cuts
        && trace.steps.iter().all(|s| s.size <= trace.d);
    r.tallies_ok = counted && cuts + 1 == g.n() && weighted == g.m();
    if !r.tallies_ok {
        r.messages.push(format!(
            "tallies give {cuts} cuts removing {weighted} edges; expected {} and {}",
            g.n().saturating_sub(1),
            g.m()
        ));
    }
    let late_d = trace.steps.iter().skip(1).any(|s| s.size >= trace.d);
    let first_d = trace.steps.first().is_some_and(|s| s.size == trace.d);
    r.first_cut_ok = !late_d && (!first_d || g.is_regular(trace.d));
    if !r.first_cut_ok {
        r.messages.push(
            "a cut of size d appears where the graph is not d-regular or after the first step"
                .into(),
        );
    }
    let sizes: Vec<usize> = trace.sizes().collect();
    r.average_cut_violations = average_cut_violations(&sizes);
    r
}
