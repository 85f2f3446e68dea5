use super::MeasureConfig;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::measure_uni::{MeasureResult, Method};
use crate::numeric::EPS;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent random shifts of the point set.
pub const QMC_BLOCKS: usize = 8;
/// Two-sided 99.9% Student-t quantile for `QMC_BLOCKS - 1` degrees of
/// freedom; the reported bound is this many standard errors.
pub const QMC_COVERAGE: f64 = 5.408;
/// Largest tolerated fraction of sample points where `F` is exactly zero.
pub const QMC_MAX_SKIP_FRACTION: f64 = 1e-3;

/// Generator of the `R_d` Kronecker sequence: `1/φ_d^j` with `φ_d` the
/// positive root of `x^(d+1) = x + 1`.
fn kronecker_alphas(d: usize) -> Vec<f64> {
    let mut x: f64 = 2.0;
    for _ in 0..64 {
        let fx = x.powi(d as i32 + 1) - x - 1.0;
        let dfx = (d as f64 + 1.0) * x.powi(d as i32) - 1.0;
        x -= fx / dfx;
    }
    (1..=d).map(|j| x.powi(-(j as i32)).fract()).collect()
}

/// Mean of `log|F|` over randomly shifted Kronecker point sets. A sanity
/// estimator only: the logarithmic singularities make it slow to converge.
pub fn qmc_estimate(f: &LaurentPoly, cfg: &MeasureConfig) -> Result<MeasureResult> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if cfg.samples == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    if f.num_terms() == 1 {
        // |F| is constant on the torus.
        let (_, c) = f.terms().next().expect("one term");
        let mut r = MeasureResult::new(c.log_abs(), 0.0, Method::Qmc);
        r.detail.notes.push("monomial: |F| is constant on the torus".into());
        r.config = Some(cfg.clone());
        return Ok(r);
    }
    let k = f.k();
    let alphas = kronecker_alphas(k);
    let per_block = cfg.samples.div_ceil(QMC_BLOCKS);
    let total = per_block * QMC_BLOCKS;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut means = Vec::with_capacity(QMC_BLOCKS);
    let mut skipped = 0usize;
    let mut mag = 0.0;
    let mut t = vec![0.0; k];
    for _ in 0..QMC_BLOCKS {
        let shift: Vec<f64> = (0..k).map(|_| rng.gen::<f64>()).collect();
        let mut sum = 0.0;
        let mut used = 0usize;
        for i in 0..per_block {
            for j in 0..k {
                t[j] = (shift[j] + ((i + 1) as f64 * alphas[j]).fract()).fract();
            }
            let v = f.evaluate(&t)?.norm();
            if v == 0.0 {
                skipped += 1;
                continue;
            }
            let l = v.ln();
            sum += l;
            mag += l.abs();
            used += 1;
        }
        if skipped as f64 > QMC_MAX_SKIP_FRACTION * total as f64 {
            return Err(Error::TooManyZeros {
                skipped,
                samples: total,
            });
        }
        if used > 0 {
            means.push(sum / used as f64);
        }
    }
    let b = means.len() as f64;
    let value = means.iter().sum::<f64>() / b;
    let var = means.iter().map(|m| (m - value).powi(2)).sum::<f64>() / (b * (b - 1.0));
    let se = var.sqrt();
    let rounding = 4.0 * EPS * mag;
    let mut r = MeasureResult::new(value, QMC_COVERAGE * se + rounding, Method::Qmc);
    r.detail.samples = Some(total);
    r.detail.skipped_points = Some(skipped);
    r.detail.notes.push(format!(
        "standard error {se:e} over {QMC_BLOCKS} shifts; bound is {QMC_COVERAGE} standard errors"
    ));
    r.config = Some(cfg.clone());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;

    fn cfg(samples: usize, seed: u64) -> MeasureConfig {
        MeasureConfig {
            samples,
            seed,
            ..MeasureConfig::default()
        }
    }

    #[test]
    fn golden_generator() {
        let a = kronecker_alphas(1);
        assert!((a[0] - 0.6180339887498949).abs() < 1e-15);
        let a = kronecker_alphas(2);
        assert!((a[0] - 1.0 / 1.324717957244746).abs() < 1e-15);
    }

    #[test]
    fn examples() {
        let r = qmc_estimate(&parse_poly("z1", 1).unwrap(), &cfg(4096, 0)).unwrap();
        assert!(r.value.abs() < 1e-12);
        let r = qmc_estimate(&parse_poly("5", 2).unwrap(), &cfg(4096, 0)).unwrap();
        assert_eq!(r.value, 5f64.ln());
        let r = qmc_estimate(&parse_poly("5+z1+z2", 2).unwrap(), &cfg(8192, 3)).unwrap();
        assert!(r.value > 5f64.ln() - r.error_bound && r.value < 7f64.ln() + r.error_bound);
        assert!((r.value - 5f64.ln()).abs() < r.error_bound.max(1e-9));
        assert!(r.error_bound < 1e-3);
    }

    #[test]
    fn seeded_and_deterministic() {
        let f = parse_poly("1+z1+z2", 2).unwrap();
        let a = qmc_estimate(&f, &cfg(4096, 11)).unwrap();
        let b = qmc_estimate(&f, &cfg(4096, 11)).unwrap();
        let c = qmc_estimate(&f, &cfg(4096, 12)).unwrap();
        assert_eq!(a.value, b.value);
        assert_ne!(a.value, c.value);
        assert!((a.value - 0.3230659472194505).abs() < a.error_bound.max(5e-3));
    }
}
