//! Root-squaring bracket for the measure, used as an independent
//! cross-check of the root-based value.

use num_complex::Complex64;

/// `log C(d, floor(d/2))`
fn log_central_binomial(d: usize) -> f64 {
    let h = d / 2;
    (1..=h).map(|i| ((d - h + i) as f64 / i as f64).ln()).sum()
}

/// After `steps` Graeffe iterations the coefficients' largest modulus
/// `S` brackets `2^steps · m(p)` between `S - log C(d, d/2)` and
/// `S + log(d + 1)`. Coefficients are renormalized each step, so the
/// bracket stays finite for any degree.
pub(crate) fn graeffe_bracket(c: &[Complex64], steps: u32) -> (f64, f64) {
    let d = c.len() - 1;
    let mut a: Vec<Complex64> = c.to_vec();
    let mut scale = normalize(&mut a);
    for _ in 0..steps {
        let mut b = vec![Complex64::new(0.0, 0.0); d + 1];
        for (i, bi) in b.iter_mut().enumerate() {
            let lo = (2 * i).saturating_sub(d);
            let hi = (2 * i).min(d);
            let mut s = Complex64::new(0.0, 0.0);
            for j in lo..=hi {
                let t = a[j] * a[2 * i - j];
                if j % 2 == 0 {
                    s += t;
                } else {
                    s -= t;
                }
            }
            *bi = s;
        }
        scale = 2.0 * scale + normalize(&mut b);
        a = b;
    }
    let f = 2f64.powi(steps as i32);
    (
        (scale - log_central_binomial(d)) / f,
        (scale + ((d + 1) as f64).ln()) / f,
    )
}

/// Divides by the largest modulus and returns its log.
fn normalize(a: &mut [Complex64]) -> f64 {
    let m = a.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if m > 0.0 {
        for x in a.iter_mut() {
            *x /= m;
        }
        m.ln()
    } else {
        f64::NEG_INFINITY
    }
}
