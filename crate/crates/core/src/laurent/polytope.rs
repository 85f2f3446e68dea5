//! Exponent polytope `C(F)`: the convex hull of the exponents carrying a
//! nonzero coefficient, and the measure bracket it gives.

use super::{ExponentVector, LaurentPoly};
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Polytope {
    /// Extreme points, in lexicographic order.
    pub vertices: Vec<Vec<i64>>,
    /// Affine dimension; -1 for the empty polytope.
    pub dim: i64,
}

impl Polytope {
    pub fn empty() -> Self {
        Polytope {
            vertices: Vec::new(),
            dim: -1,
        }
    }
}

pub fn exponent_polytope(f: &LaurentPoly) -> Result<Polytope> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let points: Vec<&ExponentVector> = f.terms().map(|(e, _)| e).collect();
    let vertices = extreme_points(&points);
    let dim = affine_dimension(&vertices);
    Ok(Polytope {
        vertices: vertices.into_iter().map(|v| v.as_slice().to_vec()).collect(),
        dim,
    })
}

/// `(lower, upper)` with `lower = max log|c(v)|` over vertices `v` and
/// `upper = log(length)`; the Mahler measure lies in between.
pub fn coefficient_bounds(f: &LaurentPoly) -> Result<(f64, f64)> {
    let poly = exponent_polytope(f)?;
    let lower = poly
        .vertices
        .iter()
        .map(|v| f.coefficient(v).expect("vertex is an exponent").log_abs())
        .fold(f64::NEG_INFINITY, f64::max);
    let upper = f.length().ln();
    Ok((lower, upper.max(lower)))
}

fn extreme_points<'a>(points: &[&'a ExponentVector]) -> Vec<&'a ExponentVector> {
    let n = points.len();
    if n <= 2 {
        return points.to_vec();
    }
    if points[0].len() == 1 {
        // sorted lexicographically
        return vec![points[0], points[n - 1]];
    }
    (0..n)
        .filter(|&i| {
            // lexicographic extremes are always vertices
            if i == 0 || i == n - 1 {
                return true;
            }
            let others: Vec<&ExponentVector> = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| *p)
                .collect();
            !in_convex_hull(points[i], &others)
        })
        .map(|i| points[i])
        .collect()
}

fn affine_dimension(vertices: &[&ExponentVector]) -> i64 {
    let Some(first) = vertices.first() else {
        return -1;
    };
    let k = first.len();
    let rows: Vec<Vec<i64>> = vertices[1..]
        .iter()
        .map(|v| (0..k).map(|i| v[i] - first[i]).collect())
        .collect();
    if rows.is_empty() || k == 0 {
        return 0;
    }
    IntMatrix::from_rows(&rows).map(|m| m.rank() as i64).unwrap_or(0)
}

/// Exact phase-one simplex (Bland's rule) deciding whether `p` is a convex
/// combination of `pts`.
fn in_convex_hull(p: &ExponentVector, pts: &[&ExponentVector]) -> bool {
    let k = p.len();
    let n = pts.len();
    let m = k + 1;
    let width = n + m + 1;
    let zero = BigRational::zero();
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for r in 0..m {
        let mut row = vec![zero.clone(); width];
        let rhs = if r < k { p[r] } else { 1 };
        let flip = rhs < 0;
        for (j, q) in pts.iter().enumerate() {
            let a = if r < k { q[r] } else { 1 };
            row[j] = BigRational::from_integer(BigInt::from(if flip { -a } else { a }));
        }
        row[n + r] = BigRational::one();
        row[width - 1] = BigRational::from_integer(BigInt::from(rhs.abs()));
        tab.push(row);
    }
    // reduced costs of the phase-one objective (sum of artificials)
    let mut cost = vec![zero.clone(); width];
    for row in &tab {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<usize> = None;
        for r in 0..m {
            if !tab[r][enter].is_positive() {
                continue;
            }
            let ratio = &tab[r][width - 1] / &tab[r][enter];
            leave = match leave {
                None => Some(r),
                Some(l) => {
                    let best = &tab[l][width - 1] / &tab[l][enter];
                    if ratio < best || (ratio == best && basis[r] < basis[l]) {
                        Some(r)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        let Some(l) = leave else {
            // unbounded direction cannot occur for a bounded-below objective
            break;
        };
        let piv = tab[l][enter].clone();
        for x in tab[l].iter_mut() {
            *x /= &piv;
        }
        let pivot_row = tab[l].clone();
        for (r, row) in tab.iter_mut().enumerate() {
            if r == l || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (x, y) in cost.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        basis[l] = enter;
    }
    // optimum of sum(artificials) is -cost[rhs]
    cost[width - 1].is_zero()
}
