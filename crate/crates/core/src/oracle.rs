//! Brute-force spanning-tree enumeration, used as an independent check on
//! the determinant route.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{find, SimpleGraph, WeightedGraph};

/// Largest edge count the enumerator accepts.
pub const ORACLE_MAX_EDGES: usize = 24;

type Edge = (usize, usize);

pub type EdgeSubset = Vec<Edge>;

/// Every spanning tree of `g` as a sorted edge list.
pub fn enumerate_spanning_trees(g: &SimpleGraph) -> Result<Vec<EdgeSubset>> {
    trees_of(g.n(), &g.edges())
}

/// Spanning trees of a weighted graph (one entry per distinct weighted edge).
pub fn enumerate_weighted_trees(g: &WeightedGraph) -> Result<Vec<EdgeSubset>> {
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    trees_of(g.n(), &edges)
}

/// Weight-product sum over the enumerated trees.
pub fn brute_force_tree_sum(g: &WeightedGraph) -> Result<BigRational> {
    let trees = enumerate_weighted_trees(g)?;
    Ok(trees
        .iter()
        .map(|t| {
            t.iter().fold(BigRational::one(), |acc, &(u, v)| {
                acc * g.weight(u, v).expect("tree edge is in the graph")
            })
        })
        .fold(BigRational::zero(), |a, b| a + b))
}

fn trees_of(n: usize, edges: &[(usize, usize)]) -> Result<Vec<EdgeSubset>> {
    if edges.len() > ORACLE_MAX_EDGES {
        return Err(Error::OracleTooLarge {
            m: edges.len(),
            max: ORACLE_MAX_EDGES,
        });
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return Ok(out);
    }
    let need = n - 1;
    if edges.len() < need {
        return Ok(out);
    }
    // test every (n-1)-subset: acyclic with n-1 edges means spanning tree
    let mut chosen = Vec::with_capacity(need);
    subsets(edges, 0, need, &mut chosen, &mut |subset| {
        let mut parent: Vec<usize> = (0..n).collect();
        for &(u, v) in subset {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return;
            }
            parent[a] = b;
        }
        out.push(subset.to_vec());
    });
    Ok(out)
}

fn subsets(
    edges: &[(usize, usize)],
    start: usize,
    left: usize,
    chosen: &mut Vec<(usize, usize)>,
    visit: &mut dyn FnMut(&[Edge]),
) {
    if left == 0 {
        visit(chosen);
        return;
    }
    for i in start..=edges.len() - left {
        chosen.push(edges[i]);
        subsets(edges, i + 1, left - 1, chosen, visit);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(
            enumerate_spanning_trees(&SimpleGraph::complete(3))
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            enumerate_spanning_trees(&SimpleGraph::complete(4))
                .unwrap()
                .len(),
            16
        );
        assert!(enumerate_spanning_trees(&SimpleGraph::empty(2).unwrap())
            .unwrap()
            .is_empty());
        assert_eq!(
            enumerate_spanning_trees(&SimpleGraph::empty(1).unwrap()).unwrap(),
            vec![vec![]]
        );
    }

    #[test]
    fn size_guard() {
        assert_eq!(
            enumerate_spanning_trees(&SimpleGraph::complete(8)),
            Err(Error::OracleTooLarge { m: 28, max: 24 })
        );
    }

    #[test]
    fn weighted_sum() {
        let r = |x: i64| BigRational::from_integer(x.into());
        let g = WeightedGraph::from_weighted_edges(3, [(0, 1, r(1)), (1, 2, r(1)), (0, 2, r(2))])
            .unwrap();
        assert_eq!(brute_force_tree_sum(&g).unwrap(), r(5));
    }
}
