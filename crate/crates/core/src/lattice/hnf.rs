use super::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// `U·A = H` with `U` unimodular and `H` in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HnfResult {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Saturated Hermite normal form: `h` has its zero rows stripped and
/// `A = V·H'` where `H'` is `h` padded back with zero rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShnfResult {
    pub h: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

/// A matrix under row operations, optionally carrying the accumulated
/// transform `u` (so `u·A = m`) and its inverse `v` (so `A = v·m`).
struct Tracked {
    m: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Tracked {
    fn swap(&mut self, i: usize, j: usize) {
        self.m.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    fn negate(&mut self, i: usize) {
        self.m.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
        if let Some(v) = &mut self.v {
            v.negate_col(i);
        }
    }

    /// `row_i += c * row_j`
    fn add(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        self.m.add_row_multiple(i, j, c);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(i, j, c);
        }
        if let Some(v) = &mut self.v {
            v.add_col_multiple(j, i, &-c);
        }
    }

    /// Exact division of row `i` by `g`; `u` is dropped as it stops being
    /// integral.
    fn divide(&mut self, i: usize, g: &BigInt) {
        self.m.divide_row(i, g);
        self.u = None;
        if let Some(v) = &mut self.v {
            v.scale_col(i, g);
        }
    }

    /// Echelon form with positive pivots, then reduction above pivots.
    /// Returns the pivot columns.
    fn echelonize(&mut self) -> Vec<usize> {
        let rows = self.m.rows();
        let cols = self.m.cols();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            loop {
                let best = (r..rows)
                    .filter(|&i| !self.m.get(i, c).is_zero())
                    .min_by(|&a, &b| self.m.get(a, c).abs().cmp(&self.m.get(b, c).abs()));
                let Some(best) = best else { break };
                self.swap(r, best);
                let mut clean = true;
                for i in r + 1..rows {
                    if self.m.get(i, c).is_zero() {
                        continue;
                    }
                    let q = self.m.get(i, c).div_floor(self.m.get(r, c));
                    self.add(i, r, &-q);
                    if !self.m.get(i, c).is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if self.m.get(r, c).is_zero() {
                continue;
            }
            if self.m.get(r, c).is_negative() {
                self.negate(r);
            }
            pivots.push(c);
            r += 1;
        }
        self.reduce_above(&pivots);
        pivots
    }

    /// Reduces entries above each pivot into `[0, pivot)`. Rows must already
    /// be in echelon form with positive pivots.
    fn reduce_above(&mut self, pivots: &[usize]) {
        for (r, &c) in pivots.iter().enumerate() {
            for i in 0..r {
                let q = self.m.get(i, c).div_floor(self.m.get(r, c));
                self.add(i, r, &-q);
            }
        }
    }
}

/// Hermite normal form with its unimodular transform.
pub fn hnf(a: &IntMatrix) -> HnfResult {
    let mut t = Tracked {
        m: a.clone(),
        u: Some(IntMatrix::identity(a.rows())),
        v: None,
    };
    let pivot_cols = t.echelonize();
    HnfResult {
        h: t.m,
        u: t.u.expect("transform is kept"),
        rank: pivot_cols.len(),
        pivot_cols,
    }
}

/// Saturated Hermite normal form. After the HNF, rows are visited from the
/// bottom up; each gets the integer combination of the rows below it that
/// maximizes its content, and is divided by that content. HNF is restored
/// once at the end.
pub fn shnf(a: &IntMatrix) -> ShnfResult {
    let mut t = Tracked {
        m: a.clone(),
        u: None,
        v: Some(IntMatrix::identity(a.rows())),
    };
    let pivots = t.echelonize();
    let rank = pivots.len();
    for i in (0..rank).rev() {
        let pivot = t.m.get(i, pivots[i]).clone();
        if pivot.is_one() {
            continue;
        }
        let lower: Vec<Vec<BigInt>> = (i + 1..rank).map(|j| t.m.row(j).to_vec()).collect();
        for g in divisors_desc(&pivot) {
            if g.is_one() {
                break;
            }
            if let Some(coeffs) = solve_mod(t.m.row(i), &lower, &g) {
                for (off, c) in coeffs.iter().enumerate() {
                    t.add(i, i + 1 + off, c);
                }
                let content = row_content(t.m.row(i));
                debug_assert_eq!(content, g);
                t.divide(i, &content);
                break;
            }
        }
    }
    t.reduce_above(&pivots);
    let h = t.m.strip_zero_rows();
    ShnfResult {
        h,
        v: t.v.expect("inverse transform is kept"),
        rank,
    }
}

pub(crate) fn row_content(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Finds integers `u` with `target + Σ u_j·rows_j ≡ 0 (mod g)` entrywise,
/// by testing `-target` for membership in the lattice spanned by `rows`
/// and `g·Z^k`.
fn solve_mod(target: &[BigInt], rows: &[Vec<BigInt>], g: &BigInt) -> Option<Vec<BigInt>> {
    let k = target.len();
    let mut stacked: Vec<Vec<BigInt>> = rows.to_vec();
    for c in 0..k {
        let mut e = vec![BigInt::zero(); k];
        e[c] = g.clone();
        stacked.push(e);
    }
    let m = IntMatrix::from_big_rows(stacked, k).expect("consistent rows");
    let res = hnf(&m);
    let mut rest: Vec<BigInt> = target.iter().map(|x| -x).collect();
    let mut x = vec![BigInt::zero(); m.rows()];
    for (r, &c) in res.pivot_cols.iter().enumerate() {
        let p = res.h.get(r, c);
        let (q, rem) = rest[c].div_rem(p);
        if !rem.is_zero() {
            return None;
        }
        for (col, val) in rest.iter_mut().enumerate() {
            *val -= &q * res.h.get(r, col);
        }
        x[r] = q;
    }
    if rest.iter().any(|v| !v.is_zero()) {
        return None;
    }
    // Coefficients on the stacked rows are x·U; keep those on `rows`.
    let u = (0..rows.len())
        .map(|j| (0..m.rows()).fold(BigInt::zero(), |acc, r| acc + &x[r] * res.u.get(r, j)))
        .collect();
    Some(u)
}

/// Positive divisors of `|n|` in descending order.
pub(crate) fn divisors_desc(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pw);
                pw *= &p;
            }
        }
        divs = next;
    }
    divs.sort_unstable_by(|a, b| b.cmp(a));
    divs
}

/// Prime factorization of `|n|` by trial division.
pub(crate) fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn hnf_examples() {
        let r = hnf(&IntMatrix::identity(2));
        assert_eq!(r.h, IntMatrix::identity(2));
        assert_eq!(r.u, IntMatrix::identity(2));

        let a = m(&[vec![2, 4], vec![1, 1]]);
        let r = hnf(&a);
        assert_eq!(r.h, m(&[vec![1, 1], vec![0, 2]]));
        assert_eq!(r.u.mul(&a).unwrap(), r.h);
        assert_eq!(r.u.determinant().unwrap().abs(), BigInt::one());

        let z = IntMatrix::zeros(2, 2);
        let r = hnf(&z);
        assert_eq!(r.h, z);
        assert_eq!(r.rank, 0);
        assert_eq!(r.u, IntMatrix::identity(2));
    }

    #[test]
    fn hnf_with_dependent_rows() {
        let a = m(&[vec![0, 2, 4], vec![0, 3, 6], vec![1, 1, 1]]);
        let r = hnf(&a);
        assert!(r.h.is_hnf());
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);
        assert!(r.h.is_zero_row(2));
        assert_eq!(r.u.mul(&a).unwrap(), r.h);
    }

    #[test]
    fn shnf_examples() {
        let a = m(&[vec![1, 1, 4, 0], vec![0, 2, 3, 3], vec![0, 0, 5, 1]]);
        let r = shnf(&a);
        assert_eq!(r.h, m(&[vec![1, 0, 0, -2], vec![0, 1, 4, 2], vec![0, 0, 5, 1]]));
        assert_eq!(r.v.mul(&r.h).unwrap(), a);

        let r = shnf(&m(&[vec![2, 4, 6]]));
        assert_eq!(r.h, m(&[vec![1, 2, 3]]));
        assert_eq!(r.v, m(&[vec![2]]));

        let r = shnf(&m(&[vec![3, 1], vec![1, 2]]));
        assert_eq!(r.h, IntMatrix::identity(2));
    }

    #[test]
    fn shnf_rank_deficient() {
        let a = m(&[vec![2, 4], vec![3, 6], vec![0, 0]]);
        let r = shnf(&a);
        assert_eq!(r.rank, 1);
        assert_eq!(r.h, m(&[vec![1, 2]]));
        let padded = r.h.pad_rows(3);
        assert_eq!(r.v.mul(&padded).unwrap(), a);
        assert!(!r.v.determinant().unwrap().is_zero());

        let r = shnf(&IntMatrix::zeros(0, 3));
        assert_eq!((r.h.rows(), r.h.cols(), r.rank), (0, 3, 0));
    }

    #[test]
    fn divisor_lists() {
        let d: Vec<i64> = divisors_desc(&BigInt::from(12))
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(d, vec![12, 6, 4, 3, 2, 1]);
        assert_eq!(
            factorize(&BigInt::from(-45)),
            vec![(BigInt::from(3), 2), (BigInt::from(5), 1)]
        );
    }
}
