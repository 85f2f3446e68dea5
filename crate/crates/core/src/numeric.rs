//! Small floating-point helpers shared by the evaluation paths.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use std::f64::consts::FRAC_PI_2;

/// `e^{2 pi i t}` for `t` measured in turns.
///
/// The argument is reduced modulo one and folded into the first octant so
/// that quarter turns come out exactly (`cis_turns(0.5) == -1 + 0i`).
pub fn cis_turns(t: f64) -> Complex64 {
    let t = t - t.floor();
    let x = 4.0 * t;
    let quadrant = x.floor();
    let s = x - quadrant;
    let (c, sn) = if s == 0.0 {
        (1.0, 0.0)
    } else if s <= 0.5 {
        let a = s * FRAC_PI_2;
        (a.cos(), a.sin())
    } else {
        let a = (1.0 - s) * FRAC_PI_2;
        (a.sin(), a.cos())
    };
    match quadrant as i64 & 3 {
        0 => Complex64::new(c, sn),
        1 => Complex64::new(-sn, c),
        2 => Complex64::new(-c, -sn),
        _ => Complex64::new(sn, -c),
    }
}

/// Fractional part of `e * t`, using an error-free product so that large
/// exponents do not lose the low-order bits of the phase.
pub fn frac_product(e: i64, t: f64) -> f64 {
    let ef = e as f64;
    let hi = ef * t;
    let lo = ef.mul_add(t, -hi);
    let r = (hi - hi.floor()) + lo;
    r - r.floor()
}

pub fn bigint_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(if x.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// `log |x|` without overflowing for integers beyond the `f64` range.
pub fn log_abs_bigint(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits < 1000 {
        return bigint_to_f64(x).abs().ln();
    }
    let shift = bits - 64;
    let top = (x.abs() >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Unit roundoff for `f64`.
pub const EPS: f64 = f64::EPSILON / 2.0;

/// Neumaier's compensated sum.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut s = 0.0f64;
    let mut c = 0.0f64;
    for v in values {
        let t = s + v;
        c += if s.abs() >= v.abs() { (s - t) + v } else { (v - t) + s };
        s = t;
    }
    s + c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turns_are_exact() {
        assert_eq!(cis_turns(0.0), Complex64::new(1.0, 0.0));
        assert_eq!(cis_turns(0.25), Complex64::new(0.0, 1.0));
        assert_eq!(cis_turns(0.5), Complex64::new(-1.0, 0.0));
        assert_eq!(cis_turns(0.75), Complex64::new(0.0, -1.0));
        assert_eq!(cis_turns(1.25), Complex64::new(0.0, 1.0));
        assert_eq!(cis_turns(-0.25), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn cis_matches_libm() {
        for i in 0..1000 {
            let t = i as f64 / 997.0;
            let a = 2.0 * std::f64::consts::PI * t;
            let z = cis_turns(t);
            assert!((z.re - a.cos()).abs() < 1e-15);
            assert!((z.im - a.sin()).abs() < 1e-15);
        }
    }

    #[test]
    fn frac_product_large_exponent() {
        // the plain product rounds away the fractional part here
        let e = (1i64 << 52) + 1;
        assert_eq!(frac_product(e, 0.75), 0.75);
        assert_eq!(frac_product(3i64.pow(30), 0.125), 0.125);
        assert!((frac_product(5, 0.25) - 0.25).abs() < 1e-16);
        assert!((frac_product(-1, 0.25) - 0.75).abs() < 1e-16);
    }

    #[test]
    fn compensated_mean_of_equal_values() {
        let x = 2f64.ln();
        assert_eq!(compensated_sum(std::iter::repeat_n(x, 64)) / 64.0, x);
        assert_eq!(compensated_sum([1e16, 1.0, -1e16]), 1.0);
    }

    #[test]
    fn log_of_huge_integer() {
        let x = BigInt::from(10).pow(400);
        assert!((log_abs_bigint(&x) - 400.0 * 10f64.ln()).abs() < 1e-9);
        assert!((log_abs_bigint(&BigInt::from(-7)) - 7f64.ln()).abs() < 1e-15);
    }
}
