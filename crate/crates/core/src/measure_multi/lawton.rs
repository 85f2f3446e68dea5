use super::MeasureConfig;
use crate::error::{Error, Result};
use crate::lattice::{lawton_vector, IntMatrix};
use crate::laurent::LaurentPoly;
use crate::measure_uni::{measure_uni, MeasureResult, Method, TracePoint, UniPoly};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Lawton run with the last specializations kept for zero testing.
pub(crate) struct LawtonRun {
    pub result: MeasureResult,
    /// The final two specializations, oldest first.
    pub tail: Vec<UniPoly>,
}

/// Univariate degree of `F` specialized along `r`.
fn specialized_span(f: &LaurentPoly, r: &[BigInt]) -> BigInt {
    let dots = f
        .terms()
        .map(|(e, _)| e.as_slice().iter().zip(r).map(|(&x, ri)| ri * x).sum::<BigInt>());
    let (lo, hi) = dots.fold((None::<BigInt>, None::<BigInt>), |(lo, hi), d| {
        (
            Some(lo.map_or(d.clone(), |l| l.min(d.clone()))),
            Some(hi.map_or(d.clone(), |h| h.max(d))),
        )
    });
    hi.unwrap_or_default() - lo.unwrap_or_default()
}

pub(crate) fn lawton_run(f: &LaurentPoly, cfg: &MeasureConfig) -> Result<LawtonRun> {
    cfg.schedule.validate()?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let k = f.k();
    if k == 0 {
        return Err(Error::InvalidArgument(
            "Lawton specialization needs at least one variable".into(),
        ));
    }
    let mut trace = Vec::new();
    let mut skipped = Vec::new();
    let mut tail = Vec::new();
    for &n in &cfg.schedule.n_values {
        let r = lawton_vector(n, k)?;
        let span = specialized_span(f, &r);
        if span.to_u64().is_none_or(|s| s > cfg.schedule.degree_cap) {
            skipped.push(n);
            continue;
        }
        let g = f.substitute(&IntMatrix::row_vector(&r))?;
        if g.is_zero() {
            skipped.push(n);
            continue;
        }
        let u = UniPoly::from_laurent(&g)?;
        let m = measure_uni(&u)?;
        trace.push(TracePoint {
            n,
            degree: u.degree(),
            estimate: m.value,
            error_bound: m.error_bound,
        });
        tail.push(u);
        if tail.len() > 2 {
            tail.remove(0);
        }
    }
    let last = *trace.last().ok_or(Error::NoSpecialization)?;
    let recent = &trace[trace.len().saturating_sub(3)..];
    let hi = recent.iter().map(|p| p.estimate).fold(f64::NEG_INFINITY, f64::max);
    let lo = recent.iter().map(|p| p.estimate).fold(f64::INFINITY, f64::min);
    let used = recent.len();
    let mut result = MeasureResult::new(last.estimate, (hi - lo) + last.error_bound, Method::Lawton);
    result.detail.trace = trace;
    result.detail.skipped_n = skipped;
    result
        .detail
        .notes
        .push("error bound is empirical: spread of the final three estimates plus root error".into());
    if used < 3 {
        result
            .detail
            .notes
            .push(format!("only {used} usable specialization(s)"));
    }
    result.config = Some(cfg.clone());
    Ok(LawtonRun { result, tail })
}

/// `m(F)` as the limit of `m(F(z, z^n, z^(n^2), ...))` along the schedule.
/// The value is the last estimate; no convergence rate is assumed.
pub fn lawton_estimate(f: &LaurentPoly, cfg: &MeasureConfig) -> Result<MeasureResult> {
    lawton_run(f, cfg).map(|r| r.result)
}
