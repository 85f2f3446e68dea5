use super::content;
use super::MeasureConfig;
use crate::error::{Error, Result};
use crate::laurent::{Coefficient, LaurentPoly};
use crate::measure_uni::{measure_uni, measure_uni_with, MeasureResult, Method, RootConfig, UniPoly};
use crate::numeric::{cis_turns, compensated_sum, EPS};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Terms of `F` grouped by the exponent of `z2`: `(e1, c)`.
type Columns = BTreeMap<i64, Vec<(i64, Complex64)>>;

/// `m(F)` for two variables as `∫ m(F(e(t), ·)) dt`: the inner measure
/// from roots, the outer integral by the trapezoid rule at `t = i/n`, and
/// the error bound from comparison with the rule on every other node.
///
/// For integer `F`, a factor depending on `z1` alone is split off first and
/// measured by its roots; otherwise its zeros on the circle would put
/// logarithmic singularities into the outer integrand.
pub fn jensen_2d(f: &LaurentPoly, cfg: &MeasureConfig) -> Result<MeasureResult> {
    if f.k() != 2 {
        return Err(Error::DimensionMismatch {
            context: "iterated Jensen variables",
            expected: 2,
            found: f.k(),
        });
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if cfg.nodes < 2 {
        return Err(Error::InvalidArgument("need at least 2 quadrature nodes".into()));
    }
    let mut r = match split_z1_content(f)? {
        Some((c, rest)) => {
            let mc = measure_uni(&c)?;
            let mut r = quadrature(&rest, cfg)?;
            r.value += mc.value;
            r.error_bound += mc.error_bound;
            r.detail.notes.push(format!(
                "split off a factor of degree {} in z1 alone, measure {}",
                c.degree(),
                mc.value
            ));
            r
        }
        None => quadrature(f, cfg)?,
    };
    r.config = Some(cfg.clone());
    Ok(r)
}

/// For integer `F`, the gcd `c(z1)` of its coefficients as a polynomial in
/// `z2`, when of positive degree, together with `F / c`.
fn split_z1_content(f: &LaurentPoly) -> Result<Option<(UniPoly, LaurentPoly)>> {
    if !f.is_integral() {
        return Ok(None);
    }
    let mut rows: BTreeMap<i64, (i64, Vec<BigInt>)> = BTreeMap::new();
    let mut by_e2: BTreeMap<i64, Vec<(i64, BigInt)>> = BTreeMap::new();
    for (e, c) in f.terms() {
        by_e2
            .entry(e[1])
            .or_default()
            .push((e[0], c.as_int().expect("integral").clone()));
    }
    for (e2, terms) in by_e2 {
        let lo = terms.iter().map(|t| t.0).min().expect("nonempty");
        let hi = terms.iter().map(|t| t.0).max().expect("nonempty");
        if hi - lo > 1 << 16 {
            return Ok(None);
        }
        let mut p = vec![BigInt::zero(); (hi - lo) as usize + 1];
        for (e1, c) in terms {
            p[(e1 - lo) as usize] = c;
        }
        rows.insert(e2, (lo, p));
    }
    let mut g: content::Poly = Vec::new();
    for (_, p) in rows.values() {
        g = content::gcd(&g, p);
        if g.len() == 1 {
            return Ok(None);
        }
    }
    let mut terms = Vec::new();
    for (&e2, (lo, p)) in &rows {
        let q = content::div_exact(p, &g).expect("gcd divides every coefficient");
        for (i, c) in q.into_iter().enumerate() {
            if !c.is_zero() {
                terms.push((vec![lo + i as i64, e2], Coefficient::Int(c)));
            }
        }
    }
    let rest = LaurentPoly::from_terms(2, terms)?;
    Ok(Some((UniPoly::from_ints(0, g), rest)))
}

fn quadrature(f: &LaurentPoly, cfg: &MeasureConfig) -> Result<MeasureResult> {
    if f.num_terms() == 1 {
        // |F| is constant on the torus.
        let (_, c) = f.terms().next().expect("one term");
        let mut r = MeasureResult::new(c.log_abs(), 0.0, Method::Jensen2d);
        r.detail.notes.push("monomial: |F| is constant on the torus".into());
        return Ok(r);
    }
    let n = cfg.nodes + cfg.nodes % 2;
    let mut cols: Columns = BTreeMap::new();
    for (e, c) in f.terms() {
        cols.entry(e[1]).or_default().push((e[0], c.to_complex()));
    }
    let lo = *cols.keys().next().expect("nonzero");
    let hi = *cols.keys().next_back().expect("nonzero");
    if hi - lo > 1 << 20 {
        return Err(Error::InvalidArgument(
            "z2-degree span too large for iterated Jensen".into(),
        ));
    }
    let rc = RootConfig {
        graeffe_max_degree: 0,
        ..RootConfig::default()
    };
    let mut values: Vec<Option<(f64, f64)>> = Vec::with_capacity(n);
    for i in 0..n {
        values.push(inner(&cols, lo, hi, i as u64, n as u64, &rc)?);
    }
    let used: Vec<(f64, f64)> = values.iter().flatten().copied().collect();
    let skipped = n - used.len();
    if used.is_empty() {
        return Err(Error::TooManyZeros { skipped, samples: n });
    }
    let mean = |v: Vec<f64>| {
        let c = v.len();
        (c > 0).then(|| compensated_sum(v) / c as f64)
    };
    let q_full = mean(used.iter().map(|v| v.0).collect()).expect("nonempty");
    let q_half = mean(values.iter().step_by(2).flatten().map(|v| v.0).collect());
    let inner_err = mean(used.iter().map(|v| v.1).collect()).expect("nonempty");
    let mag = mean(used.iter().map(|v| v.0.abs()).collect()).expect("nonempty");
    let richardson = match q_half {
        Some(h) => (q_full - h).abs(),
        None => f64::INFINITY,
    };
    let err = richardson + inner_err + 4.0 * EPS * mag;
    let mut r = MeasureResult::new(q_full, err, Method::Jensen2d);
    r.detail.nodes = Some(n);
    r.detail.skipped_points = Some(skipped);
    if n != cfg.nodes {
        r.detail.notes.push(format!("node count rounded up to {n}"));
    }
    if skipped > 0 {
        r.detail.notes.push(format!(
            "{skipped} node(s) where F(e(t), z2) vanishes identically were skipped"
        ));
    }
    Ok(r)
}

/// `m(F(e(i/n), z2))` and its error, or `None` when that polynomial is
/// identically zero.
fn inner(cols: &Columns, lo: i64, hi: i64, i: u64, n: u64, rc: &RootConfig) -> Result<Option<(f64, f64)>> {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo) as usize + 1];
    let mut single = Vec::new();
    for (&e2, terms) in cols {
        let mut s = Complex64::new(0.0, 0.0);
        let mut size = 0.0;
        for &(e1, c) in terms {
            // exact phase e1 * i / n mod 1
            let num = (e1.rem_euclid(n as i64) as u128 * i as u128 % n as u128) as f64;
            s += c * cis_turns(num / n as f64);
            size += c.norm();
        }
        // Treat sums indistinguishable from rounding noise as zero.
        if s.norm() <= 8.0 * EPS * terms.len() as f64 * size {
            continue;
        }
        coeffs[(e2 - lo) as usize] = s;
        single.push((terms.len(), terms[0].1.norm()));
    }
    let u = UniPoly::from_complex(lo, coeffs);
    if u.is_zero() {
        return Ok(None);
    }
    if u.degree() == 0 {
        // A lone monomial of F has modulus |c| on the torus exactly.
        let v = match single.as_slice() {
            [(1, a)] => a.ln(),
            _ => u.length().ln(),
        };
        return Ok(Some((v, 2.0 * EPS * v.abs())));
    }
    let m = measure_uni_with(&u, rc)?;
    Ok(Some((m.value, m.error_bound)))
}
