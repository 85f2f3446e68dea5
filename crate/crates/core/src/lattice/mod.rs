//! Integer matrices and their canonical forms: Hermite normal form, the
//! saturated Hermite normal form, Smith invariants, plus the `q` function
//! and exhaustive enumeration of saturated forms.

mod enumerate;
mod hnf;
mod matrix;
mod smith;

pub use enumerate::enumerate_shnf;
pub use hnf::{hnf, shnf, HnfResult, ShnfResult};
pub use matrix::IntMatrix;
pub use smith::{check_shnf_gcd_condition, is_saturated, smith_invariants};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Default coefficient bound for [`check_shnf_gcd_condition`].
pub const DEFAULT_COEFFICIENT_BOUND: u64 = 20;
/// Largest `n` accepted by [`lawton_vector`].
pub const LAWTON_MAX_N: u64 = 1 << 40;
/// Largest length accepted by [`lawton_vector`].
pub const LAWTON_MAX_LEN: usize = 64;
/// Largest number of candidate vectors [`q_value`] will examine.
pub const Q_MAX_WORK: u128 = 1 << 32;

/// The vector `(1, n, n^2, ..., n^(len-1))`.
pub fn lawton_vector(n: u64, len: usize) -> Result<Vec<BigInt>> {
    if n == 0 || n > LAWTON_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "n must lie in [1, {LAWTON_MAX_N}], got {n}"
        )));
    }
    if len == 0 || len > LAWTON_MAX_LEN {
        return Err(Error::InvalidArgument(format!(
            "length must lie in [1, {LAWTON_MAX_LEN}], got {len}"
        )));
    }
    let mut out = Vec::with_capacity(len);
    let mut x = BigInt::one();
    for _ in 0..len {
        out.push(x.clone());
        x *= n;
    }
    Ok(out)
}

/// `min max|s_i|` over nonzero integer `s` with `r·s = 0`, searched over
/// sup-norm shells `1..=search_bound`; `None` when nothing is found.
pub fn q_value(r: &[BigInt], search_bound: u64) -> Result<Option<u64>> {
    if r.len() < 2 {
        return Err(Error::InvalidArgument("q needs a vector of length at least 2".into()));
    }
    if r.iter().all(Zero::is_zero) {
        return Err(Error::InvalidArgument("q is undefined for the zero vector".into()));
    }
    if search_bound == 0 {
        return Err(Error::InvalidArgument("search bound must be positive".into()));
    }
    let work = (2 * search_bound as u128 + 1).checked_pow(r.len() as u32 - 1);
    if work.is_none_or(|w| w > Q_MAX_WORK) {
        return Err(Error::InvalidArgument("q search space too large".into()));
    }
    if r.iter().any(Zero::is_zero) {
        return Ok(Some(1));
    }
    // Solve for the coordinate with the largest |r_i|; enumerate the rest.
    let piv = (0..r.len())
        .max_by_key(|&i| num_traits::Signed::abs(&r[i]))
        .expect("nonempty");
    let others: Vec<&BigInt> = (0..r.len()).filter(|&i| i != piv).map(|i| &r[i]).collect();
    for shell in 1..=search_bound as i64 {
        let mut s = vec![-shell; others.len()];
        loop {
            let on_shell = s.iter().any(|x| x.abs() == shell);
            let t: BigInt = others.iter().zip(&s).map(|(ri, &si)| *ri * si).sum();
            let (q, rem) = num_integer::Integer::div_rem(&t, &r[piv]);
            if rem.is_zero() {
                let sp = -q;
                let fits = sp <= BigInt::from(shell) && sp >= BigInt::from(-shell);
                let hits = on_shell || sp == BigInt::from(shell) || sp == BigInt::from(-shell);
                let nonzero = !sp.is_zero() || s.iter().any(|&x| x != 0);
                if fits && hits && nonzero {
                    return Ok(Some(shell as u64));
                }
            }
            let mut d = 0;
            loop {
                if d == s.len() {
                    break;
                }
                s[d] += 1;
                if s[d] <= shell {
                    break;
                }
                s[d] = -shell;
                d += 1;
            }
            if d == s.len() {
                break;
            }
        }
    }
    Ok(None)
}
