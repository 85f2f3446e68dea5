use super::{is_saturated, IntMatrix};
use crate::error::{Error, Result};

/// Largest number of HNF candidates [`enumerate_shnf`] will generate.
pub const MAX_CANDIDATES: u128 = 20_000_000;

/// All rank-`l` `l x k` saturated Hermite normal forms with entries in
/// `[-height, height]`, each once, ordered by pivot columns and then by
/// entries in row-major order. `l = 0` yields the single `0 x k` matrix.
pub fn enumerate_shnf(k: usize, l: usize, height: u64) -> Result<Vec<IntMatrix>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if l > k {
        return Err(Error::InvalidArgument(format!("rank {l} exceeds k = {k}")));
    }
    if height == 0 {
        return Err(Error::InvalidArgument("height must be positive".into()));
    }
    if height > i64::MAX as u64 / 4 {
        return Err(Error::InvalidArgument("height too large".into()));
    }
    if l == 0 {
        return Ok(vec![IntMatrix::zeros(0, k)]);
    }
    let h = height as i64;
    let mut out = Vec::new();
    let mut total: u128 = 0;
    for pivots in combinations(k, l) {
        // Each cell's range; cells above a pivot depend on that pivot's value.
        let mut cands: Vec<Vec<i64>> = Vec::new();
        for pv in product(&vec![(1, h); l]) {
            let mut ranges = Vec::with_capacity(l * k);
            for i in 0..l {
                for j in 0..k {
                    let r = if j < pivots[i] {
                        (0, 0)
                    } else if j == pivots[i] {
                        (pv[i], pv[i])
                    } else if let Some(lo) = pivots[i + 1..].iter().position(|&c| c == j) {
                        (0, pv[i + 1 + lo] - 1)
                    } else {
                        (-h, h)
                    };
                    ranges.push(r);
                }
            }
            let count: u128 = ranges.iter().map(|&(a, b)| (b - a + 1) as u128).product();
            total += count;
            if total > MAX_CANDIDATES {
                return Err(Error::InvalidArgument(format!(
                    "enumeration exceeds {MAX_CANDIDATES} candidates; lower the height"
                )));
            }
            cands.extend(product(&ranges));
        }
        cands.sort_unstable();
        for c in cands {
            let rows: Vec<Vec<i64>> = c.chunks(k).map(<[i64]>::to_vec).collect();
            let mat = IntMatrix::from_rows(&rows)?;
            if is_saturated(&mat)? {
                out.push(mat);
            }
        }
    }
    Ok(out)
}

/// Increasing `l`-subsets of `0..k`, lexicographic.
fn combinations(k: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut c: Vec<usize> = (0..l).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..l).rev().find(|&i| c[i] < k - l + i) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..l {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Cartesian product of inclusive ranges, lexicographic.
fn product(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if ranges.iter().any(|&(a, b)| a > b) {
        return out;
    }
    let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        out.push(cur.clone());
        let mut d = ranges.len();
        loop {
            if d == 0 {
                return out;
            }
            d -= 1;
            if cur[d] < ranges[d].1 {
                cur[d] += 1;
                for (e, r) in ranges.iter().enumerate().skip(d + 1) {
                    cur[e] = r.0;
                }
                break;
            }
        }
    }
}
