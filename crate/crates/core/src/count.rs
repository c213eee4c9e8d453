//! Exact spanning-tree counts via the Matrix-Tree theorem.
//!
//! The reduced Laplacian determinant is computed by fraction-free (Bareiss)
//! elimination. A checked `i128` pass handles the common small case and
//! falls back to big integers on overflow.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, WeightedGraph};
use crate::hp::Real;

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Same as [`bareiss_det`] in checked `i128`; `None` on overflow.
pub fn bareiss_det_i128(mut a: Vec<Vec<i128>>) -> Option<i128> {
    let n = a.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = false;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = t / prev;
            }
        }
        prev = a[k][k];
    }
    let det = a[n - 1][n - 1];
    Some(if sign { -det } else { det })
}

fn det_integer(mat: Vec<Vec<i128>>) -> BigInt {
    match bareiss_det_i128(mat.clone()) {
        Some(d) => BigInt::from(d),
        None => bareiss_det(
            mat.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        ),
    }
}

/// Integer Laplacian with the last row and column removed.
fn reduced_laplacian(
    n: usize,
    edges: impl IntoIterator<Item = (usize, usize, i128)>,
) -> Vec<Vec<i128>> {
    let mut l = vec![vec![0i128; n]; n];
    for (u, v, w) in edges {
        l[u][u] += w;
        l[v][v] += w;
        l[u][v] -= w;
        l[v][u] -= w;
    }
    l.truncate(n.saturating_sub(1));
    for row in &mut l {
        row.truncate(n.saturating_sub(1));
    }
    l
}

/// Number of spanning trees; zero for disconnected graphs.
pub fn spanning_tree_count(g: &SimpleGraph) -> BigUint {
    if g.n() <= 1 {
        return BigUint::one();
    }
    if !g.is_connected() {
        return BigUint::zero();
    }
    let lap = reduced_laplacian(g.n(), g.edges().into_iter().map(|(u, v)| (u, v, 1)));
    det_integer(lap)
        .to_biguint()
        .expect("Laplacian minors are non-negative")
}

/// Sum over spanning trees of the product of edge weights.
///
/// Weights are scaled by the lcm of their denominators so the determinant is
/// taken over the integers, then the scale is divided back out.
pub fn weighted_tree_sum(g: &WeightedGraph) -> BigRational {
    let n = g.n();
    if n <= 1 {
        return BigRational::one();
    }
    if !g.is_connected() {
        return BigRational::zero();
    }
    let scale = g
        .edges()
        .fold(BigInt::one(), |acc, (_, _, w)| acc.lcm(w.denom()));
    let scaled: Vec<(usize, usize, BigInt)> = g
        .edges()
        .map(|(u, v, w)| (u, v, w.numer() * (&scale / w.denom())))
        .collect();
    let det = match scaled
        .iter()
        .map(|(u, v, w)| w.to_i64().map(|w| (*u, *v, w as i128)))
        .collect::<Option<Vec<_>>>()
    {
        Some(small) if small.iter().all(|e| e.2 < 1 << 40) => {
            det_integer(reduced_laplacian(n, small))
        }
        _ => {
            let mut l = vec![vec![BigInt::zero(); n]; n];
            for (u, v, w) in scaled {
                l[u][u] += &w;
                l[v][v] += &w;
                l[u][v] -= &w;
                l[v][u] -= &w;
            }
            l.truncate(n - 1);
            for row in &mut l {
                row.truncate(n - 1);
            }
            bareiss_det(l)
        }
    };
    BigRational::new(det, scale.pow((n - 1) as u32))
}

/// Spanning-tree sum for a graph with small non-negative integer weights.
/// Used on hot paths where every weight is already integral.
pub fn integer_tree_sum(n: usize, edges: &[(usize, usize, i64)]) -> BigInt {
    if n <= 1 {
        return BigInt::one();
    }
    det_integer(reduced_laplacian(
        n,
        edges.iter().map(|&(u, v, w)| (u, v, w as i128)),
    ))
}

/// Cyclomatic number `m - n + 1` of a connected graph.
pub fn cyclomatic(g: &SimpleGraph) -> Result<usize> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok((g.m() + 1).saturating_sub(g.n()))
}

/// `SP(G)^(1/mu(G))` as a rigorous interval.
pub fn beta_of(g: &SimpleGraph) -> Result<Real> {
    let mu = cyclomatic(g)?;
    if mu == 0 {
        return Err(Error::BetaUndefined);
    }
    let sp = BigInt::from(spanning_tree_count(g));
    Ok(Real::ln_integer(sp).div_int(mu as i64).exp())
}
