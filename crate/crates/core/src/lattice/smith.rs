use super::hnf::factorize;
use super::IntMatrix;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Nonzero invariant factors `d_1 | d_2 | ...` of `a`; there are `rank(a)`
/// of them.
pub fn smith_invariants(a: &IntMatrix) -> Vec<BigInt> {
    let mut m = a.clone();
    let rows = m.rows();
    let cols = m.cols();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block goes to (t, t).
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = m.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap_rows(t, bi);
        m.swap_cols(t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !m.get(i, t).is_zero() {
                    let q = m.get(i, t).div_floor(m.get(t, t));
                    m.add_row_multiple(i, t, &-q);
                    dirty |= !m.get(i, t).is_zero();
                }
            }
            for j in t + 1..cols {
                if !m.get(t, j).is_zero() {
                    let q = m.get(t, j).div_floor(m.get(t, t));
                    m.add_col_multiple(j, t, &-q);
                    dirty |= !m.get(t, j).is_zero();
                }
            }
            if dirty {
                // A nonzero remainder is smaller than the pivot; bring it in.
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !m.get(i, t).is_zero() && m.get(i, t).abs() < m.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !m.get(t, j).is_zero() && m.get(t, j).abs() < m.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                m.swap_rows(t, best.0);
                m.swap_cols(t, best.1);
                continue;
            }
            let p = m.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(m.get(i, j) % &p).is_zero()));
            match offender {
                Some(i) => m.add_row_multiple(t, i, &BigInt::one()),
                None => break,
            }
        }
        out.push(m.get(t, t).abs());
        t += 1;
    }
    out
}

/// Whether the row lattice of `h` is saturated, i.e. equals its real span
/// intersected with `Z^k`.
pub fn is_saturated(h: &IntMatrix) -> Result<bool> {
    if let Some(row) = (0..h.rows()).find(|&i| h.is_zero_row(i)) {
        return Err(Error::ZeroRow { row });
    }
    Ok(smith_invariants(h).iter().all(One::is_one))
}

/// Bounded check of the gcd characterization of saturation: every
/// `row_i + Σ_{j>i} u_j·row_j` with `|u_j| <= bound` has content 1.
///
/// Any common divisor of such a combination divides the pivot of row `i`,
/// so it suffices to look for a prime `p` of that pivot with a combination
/// vanishing mod `p`. Coefficients only matter mod `p`, so the box is
/// replaced by its residues mod `p`, which is exact.
pub fn check_shnf_gcd_condition(h: &IntMatrix, bound: u64) -> Result<bool> {
    if bound == 0 {
        return Err(Error::InvalidArgument("coefficient bound must be positive".into()));
    }
    if let Some(row) = (0..h.rows()).find(|&i| h.is_zero_row(i)) {
        return Err(Error::ZeroRow { row });
    }
    if !h.is_hnf() {
        return Err(Error::NotHermite);
    }
    let pivots = h.pivot_cols();
    let l = h.rows();
    let k = h.cols();
    for (i, &pc) in pivots.iter().enumerate() {
        for (p, _) in factorize(h.get(i, pc)) {
            let p = p
                .to_u64()
                .ok_or_else(|| Error::InvalidArgument("pivot prime factor exceeds 64 bits".into()))?;
            let residues = residue_set(bound, p);
            let red = |r: usize| -> Vec<u64> {
                h.row(r)
                    .iter()
                    .map(|x| x.mod_floor(&BigInt::from(p)).to_u64().expect("reduced"))
                    .collect()
            };
            let target = red(i);
            let lower: Vec<Vec<u64>> = (i + 1..l).map(red).collect();
            if vanishes_mod(&target, &lower, &residues, p, k) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Residues mod `p` of the integers in `[-bound, bound]`.
fn residue_set(bound: u64, p: u64) -> Vec<u64> {
    if bound.saturating_mul(2).saturating_add(1) >= p {
        return (0..p).collect();
    }
    let mut r: Vec<u64> = (0..=bound)
        .map(|x| x % p)
        .chain((1..=bound).map(|x| p - x % p))
        .collect();
    r.sort_unstable();
    r.dedup();
    r
}

/// Whether some choice of residues makes `target + Σ u_j·lower_j ≡ 0`.
fn vanishes_mod(target: &[u64], lower: &[Vec<u64>], residues: &[u64], p: u64, k: usize) -> bool {
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let mut idx = vec![0usize; lower.len()];
    loop {
        let zero = (0..k).all(|c| {
            let s = lower.iter().zip(&idx).fold(target[c] as u128, |acc, (row, &ix)| {
                acc + mulmod(residues[ix], row[c]) as u128
            });
            s % p as u128 == 0
        });
        if zero {
            return true;
        }
        let mut d = 0;
        loop {
            if d == idx.len() {
                return false;
            }
            idx[d] += 1;
            if idx[d] < residues.len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}
