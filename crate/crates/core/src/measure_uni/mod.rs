//! One-variable Mahler measure from the roots, and the gap-based
//! certificate that an integer polynomial has measure exactly zero.

mod dd;
mod graeffe;
mod result;
mod roots;

pub use result::{Detail, MeasureResult, Method, Precision, TracePoint, ZeroTest};

use crate::error::{Error, Result};
use crate::laurent::{parse_poly, Coefficient, LaurentPoly};
use crate::numeric::{log_abs_bigint, EPS};
use dd::{CDd, Dd};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use roots::{aberth, initial_points};
use std::f64::consts::LN_2;

#[derive(Clone, Debug, PartialEq)]
pub enum UniCoeffs {
    Int(Vec<BigInt>),
    Complex(Vec<Complex64>),
}

/// `z^offset · (c_0 + c_1 z + ... + c_d z^d)` with `c_0` and `c_d` nonzero.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly {
    offset: i64,
    coeffs: UniCoeffs,
}

impl UniPoly {
    pub fn from_ints(offset: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead);
        UniPoly {
            offset: if coeffs.is_empty() { 0 } else { offset + lead as i64 },
            coeffs: UniCoeffs::Int(coeffs),
        }
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::from_ints(0, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_complex(offset: i64, mut coeffs: Vec<Complex64>) -> Self {
        let zero = |c: &Complex64| c.re == 0.0 && c.im == 0.0;
        while coeffs.last().is_some_and(zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| zero(c)).count();
        coeffs.drain(..lead);
        UniPoly {
            offset: if coeffs.is_empty() { 0 } else { offset + lead as i64 },
            coeffs: UniCoeffs::Complex(coeffs),
        }
    }

    /// A Laurent polynomial in at most one variable.
    pub fn from_laurent(f: &LaurentPoly) -> Result<Self> {
        if f.k() > 1 {
            return Err(Error::DimensionMismatch {
                context: "univariate polynomial variables",
                expected: 1,
                found: f.k(),
            });
        }
        let exp = |e: &crate::laurent::ExponentVector| if f.k() == 0 { 0 } else { e[0] };
        let Some(lo) = f.terms().map(|(e, _)| exp(e)).min() else {
            return Ok(UniPoly::from_ints(0, Vec::new()));
        };
        let hi = f.terms().map(|(e, _)| exp(e)).max().expect("nonempty");
        let span = usize::try_from(hi - lo)
            .ok()
            .filter(|&s| s < 1 << 28)
            .ok_or_else(|| Error::InvalidArgument("degree span too large for a dense polynomial".into()))?;
        if f.is_integral() {
            let mut c = vec![BigInt::zero(); span + 1];
            for (e, v) in f.terms() {
                c[(exp(e) - lo) as usize] = v.as_int().expect("integral").clone();
            }
            Ok(UniPoly::from_ints(lo, c))
        } else {
            let mut c = vec![Complex64::new(0.0, 0.0); span + 1];
            for (e, v) in f.terms() {
                c[(exp(e) - lo) as usize] = v.to_complex();
            }
            Ok(UniPoly::from_complex(lo, c))
        }
    }

    /// Parses the one-variable text form, e.g. `"z1^2 - z1 - 1"`.
    pub fn parse(text: &str) -> Result<Self> {
        UniPoly::from_laurent(&parse_poly(text, 1)?)
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        let terms: Vec<(Vec<i64>, Coefficient)> = match &self.coeffs {
            UniCoeffs::Int(c) => c
                .iter()
                .enumerate()
                .map(|(i, x)| (vec![self.offset + i as i64], Coefficient::Int(x.clone())))
                .collect(),
            UniCoeffs::Complex(c) => c
                .iter()
                .enumerate()
                .map(|(i, &x)| (vec![self.offset + i as i64], Coefficient::from_complex(x)))
                .collect(),
        };
        LaurentPoly::from_terms(1, terms).expect("consistent exponents")
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &UniCoeffs {
        &self.coeffs
    }

    fn len(&self) -> usize {
        match &self.coeffs {
            UniCoeffs::Int(c) => c.len(),
            UniCoeffs::Complex(c) => c.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 0
    }

    /// Degree after removing the Laurent offset; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.len().saturating_sub(1)
    }

    pub fn is_integral(&self) -> bool {
        matches!(self.coeffs, UniCoeffs::Int(_))
    }

    pub fn length(&self) -> f64 {
        match &self.coeffs {
            UniCoeffs::Int(c) => c.iter().map(|x| crate::numeric::bigint_to_f64(x).abs()).sum(),
            UniCoeffs::Complex(c) => c.iter().map(|x| x.norm()).sum(),
        }
    }

    fn log_abs_leading(&self) -> f64 {
        match &self.coeffs {
            UniCoeffs::Int(c) => log_abs_bigint(c.last().expect("nonzero")),
            UniCoeffs::Complex(c) => c.last().expect("nonzero").norm().ln(),
        }
    }

    /// Coefficients as doubles, scaled by a power of two when the integers
    /// exceed the double range (roots are unchanged by scaling).
    fn complex_coeffs(&self) -> Vec<Complex64> {
        match &self.coeffs {
            UniCoeffs::Complex(c) => c.clone(),
            UniCoeffs::Int(c) => {
                let bits = c.iter().map(|x| x.bits()).max().unwrap_or(0);
                let shift = bits.saturating_sub(1000);
                c.iter()
                    .map(|x| {
                        let v = if shift > 0 { x.abs() >> shift } else { x.abs() };
                        let v = v.to_f64().unwrap_or(f64::MAX);
                        Complex64::new(if x.is_negative() { -v } else { v }, 0.0)
                    })
                    .collect()
            }
        }
    }

    fn dd_coeffs(&self) -> Option<Vec<CDd>> {
        match &self.coeffs {
            UniCoeffs::Complex(c) => Some(c.iter().map(|&z| CDd::from_c64(z)).collect()),
            UniCoeffs::Int(c) => {
                if c.iter().any(|x| x.bits() > 1000) {
                    return None;
                }
                Some(c.iter().map(|x| CDd::new(Dd::from_bigint(x), Dd::ZERO)).collect())
            }
        }
    }
}

/// Root-finder settings.
#[derive(Clone, Debug, PartialEq)]
pub struct RootConfig {
    /// Relative inclusion radius at which a root is accepted.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub dd_tolerance: f64,
    pub dd_max_iterations: usize,
    /// Largest degree for which the root-squaring bracket is attached.
    pub graeffe_max_degree: usize,
    pub graeffe_steps: u32,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            tolerance: 1e-13,
            max_iterations: 500,
            dd_tolerance: 1e-28,
            dd_max_iterations: 60,
            graeffe_max_degree: 256,
            graeffe_steps: 16,
        }
    }
}

/// An approximate root and the radius of a disk about it that contains a
/// true root.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub z: Complex64,
    /// `|z|` evaluated at working precision.
    pub modulus: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Root>,
    pub iterations: usize,
    pub precision: Precision,
}

impl RootSet {
    pub fn worst_bound(&self) -> f64 {
        self.roots.iter().map(|r| r.bound).fold(0.0, f64::max)
    }
}

pub fn roots(f: &UniPoly) -> Result<RootSet> {
    roots_with(f, &RootConfig::default())
}

/// All `degree` roots (with multiplicity) of `f`, ignoring its offset.
pub fn roots_with(f: &UniPoly, cfg: &RootConfig) -> Result<RootSet> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Err(Error::InvalidArgument("root finding needs degree at least 1".into()));
    }
    let c = f.complex_coeffs();
    let ac: Vec<f64> = c.iter().map(|x| x.norm()).collect();
    let start = padded_starts(&ac);
    let s = aberth(&c, start, cfg.tolerance, cfg.max_iterations);
    let set = RootSet {
        roots: s
            .roots
            .iter()
            .zip(&s.radii)
            .map(|(&z, &r)| root_from(z, z.norm(), r))
            .collect(),
        iterations: s.iterations,
        precision: Precision::Double,
    };
    if !s.converged {
        return Err(Error::NoConvergence {
            iterations: s.iterations,
            worst_bound: set.worst_bound(),
        });
    }
    Ok(set)
}

fn root_from(z: Complex64, modulus: f64, radius: f64) -> Root {
    // The modulus itself is rounded; fold that into the radius.
    Root {
        z,
        modulus,
        bound: radius + 2.0 * EPS * modulus,
    }
}

/// Newton-polygon starts, padded when scaling flushed extreme coefficients
/// to zero.
fn padded_starts(ac: &[f64]) -> Vec<Complex64> {
    let d = ac.len() - 1;
    let first = ac.iter().position(|&a| a > 0.0).unwrap_or(0);
    let last = ac.iter().rposition(|&a| a > 0.0).unwrap_or(d);
    let mut out: Vec<Complex64> = (0..first)
        .map(|m| Complex64::from_polar(1e-150, 0.3 + m as f64))
        .collect();
    out.extend(initial_points(&ac[first..=last]));
    out.extend((last..d).map(|m| Complex64::from_polar(1e150, 0.3 + m as f64)));
    out
}

/// Re-solves from `start` in double-double arithmetic.
fn refine_dd(f: &UniPoly, start: &RootSet, cfg: &RootConfig) -> Option<RootSet> {
    let c = f.dd_coeffs()?;
    let z0: Vec<CDd> = start.roots.iter().map(|r| CDd::from_c64(r.z)).collect();
    let s = aberth(&c, z0, cfg.dd_tolerance, cfg.dd_max_iterations);
    let roots = s
        .roots
        .iter()
        .zip(&s.radii)
        .map(|(z, &r)| {
            let m = z.norm().to_f64();
            root_from(z.to_c64(), m, r)
        })
        .collect();
    Some(RootSet {
        roots,
        iterations: s.iterations,
        precision: Precision::DoubleDouble,
    })
}

/// `log|lead| + Σ log max(1, |α|)` and an error bound from the inclusion
/// radii plus rounding in the sum.
fn measure_from_roots(log_lead: f64, set: &RootSet) -> (f64, f64) {
    let mut value = log_lead;
    let mut err = 0.0;
    let mut mag = log_lead.abs();
    for r in &set.roots {
        let (m, b) = (r.modulus, r.bound);
        let l = if m > 1.0 { m.ln() } else { 0.0 };
        value += l;
        mag += l;
        err += if m - b >= 1.0 {
            (2.0 * b / (m - b)).ln_1p()
        } else if m + b <= 1.0 {
            0.0
        } else {
            (m + b - 1.0).ln_1p()
        };
    }
    err += 4.0 * EPS * (set.roots.len() as f64 + 2.0) * mag;
    (value, err)
}

pub fn measure_uni(f: &UniPoly) -> Result<MeasureResult> {
    measure_uni_with(f, &RootConfig::default())
}

pub fn measure_uni_with(f: &UniPoly, cfg: &RootConfig) -> Result<MeasureResult> {
    measure_parts(f, cfg).map(|(r, _)| r)
}

fn measure_parts(f: &UniPoly, cfg: &RootConfig) -> Result<(MeasureResult, Option<RootSet>)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let log_lead = f.log_abs_leading();
    if f.degree() == 0 {
        let mut r = MeasureResult::new(log_lead, EPS * log_lead.abs(), Method::Roots);
        r.detail.notes.push("constant polynomial".into());
        return Ok((r, None));
    }
    let set = roots_with(f, cfg)?;
    let (value, err) = measure_from_roots(log_lead, &set);
    let mut r = MeasureResult::new(value, err, Method::Roots);
    r.detail.iterations = Some(set.iterations);
    r.detail.precision = Some(set.precision);
    if f.degree() <= cfg.graeffe_max_degree {
        let (lo, hi) = graeffe::graeffe_bracket(&f.complex_coeffs(), cfg.graeffe_steps);
        // The bracket is for the scaled polynomial; undo the scaling.
        let shift = log_lead - f.complex_coeffs().last().expect("nonzero").norm().ln();
        r.detail.graeffe_bracket = Some([lo + shift, hi + shift]);
    }
    Ok((r, Some(set)))
}

/// `log 2 / (2 · length)`: an integer polynomial of this length has measure
/// either exactly 0 or at least this much.
pub fn mignotte_threshold(length: f64) -> f64 {
    LN_2 / (2.0 * length)
}

/// Decides whether the integer polynomial `f` has measure exactly zero
/// (it is a monomial times cyclotomic factors).
pub fn zero_certificate(f: &UniPoly) -> Result<bool> {
    certify(f, &RootConfig::default()).map(|(z, _)| z)
}

/// The certificate decision together with the measure used to reach it.
/// Escalates to double-double once when the double-precision interval
/// straddles the gap.
pub fn certify(f: &UniPoly, cfg: &RootConfig) -> Result<(bool, MeasureResult)> {
    let UniCoeffs::Int(c) = &f.coeffs else {
        return Err(Error::NonIntegral);
    };
    if c.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if c.len() == 1 {
        let unit = c[0].abs().is_one();
        let v = log_abs_bigint(&c[0]);
        let mut r = MeasureResult::new(if unit { 0.0 } else { v }, 0.0, Method::Roots);
        r.detail.zero_test = Some(if unit {
            ZeroTest::CertifiedZero
        } else {
            ZeroTest::CertifiedNonzero
        });
        return Ok((unit, r));
    }
    let threshold = mignotte_threshold(f.length());
    let decide = |r: &MeasureResult| {
        if r.value + r.error_bound < threshold {
            Some(true)
        } else if r.value - r.error_bound > 0.0 {
            Some(false)
        } else {
            None
        }
    };
    let (mut r, set) = measure_parts(f, cfg)?;
    let mut verdict = decide(&r);
    if verdict.is_none() {
        if let Some(fine) = set.as_ref().and_then(|s| refine_dd(f, s, cfg)) {
            let (value, err) = measure_from_roots(f.log_abs_leading(), &fine);
            if err < r.error_bound {
                r.value = value;
                r.error_bound = err;
                r.detail.iterations = Some(fine.iterations);
                r.detail.precision = Some(fine.precision);
                verdict = decide(&r);
            }
        }
    }
    match verdict {
        Some(true) => {
            r.detail
                .notes
                .push(format!("measure {:e} below gap {threshold:e}", r.value));
            r.value = 0.0;
            r.error_bound = 0.0;
            r.detail.zero_test = Some(ZeroTest::CertifiedZero);
            Ok((true, r))
        }
        Some(false) => {
            r.detail.zero_test = Some(ZeroTest::CertifiedNonzero);
            Ok((false, r))
        }
        None => Err(Error::Inconclusive {
            value: r.value,
            error_bound: r.error_bound,
            threshold,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LEHMER: &str = "z1^10+z1^9-z1^7-z1^6-z1^5-z1^4-z1^3+z1+1";

    fn value(text: &str) -> MeasureResult {
        measure_uni(&UniPoly::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn root_examples() {
        let mut r: Vec<f64> = roots(&UniPoly::from_i64(&[-1, 0, 1]))
            .unwrap()
            .roots
            .iter()
            .map(|r| r.z.re)
            .collect();
        r.sort_by(f64::total_cmp);
        assert!((r[0] + 1.0).abs() < 1e-13 && (r[1] - 1.0).abs() < 1e-13);

        let set = roots(&UniPoly::from_i64(&[1, 0, 1])).unwrap();
        for r in &set.roots {
            assert!(r.z.re.abs() < 1e-13 && (r.z.im.abs() - 1.0).abs() < 1e-13);
        }

        // z^3 - z - 1: compare the real root against bisection.
        let (mut lo, mut hi) = (1.0f64, 2.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid * mid * mid - mid - 1.0 > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let set = roots(&UniPoly::from_i64(&[-1, -1, 0, 1])).unwrap();
        let outside: Vec<&Root> = set.roots.iter().filter(|r| r.modulus > 1.0).collect();
        assert_eq!(outside.len(), 1);
        assert!((outside[0].z.re - lo).abs() < 1e-13);
        assert!(outside[0].z.im.abs() < 1e-13);
        assert!((lo - 1.3247179572).abs() < 1e-10);
    }

    #[test]
    fn measure_examples() {
        let l = value(LEHMER);
        assert!((l.value - 1.1762808182599175f64.ln()).abs() < 1e-9);
        assert!((l.value - 0.1623576).abs() < 1e-7);
        assert!(l.error_bound < 1e-10);
        let v = value("z1^4+z1^2-z1-1");
        assert!((v.value - 1.75487766624669f64.ln()).abs() < 1e-10);
        let w = value("z1^11-z1^9-z1^8+z1^3+z1^2-1");
        assert!((w.value - l.value).abs() < 1e-9);
    }

    #[test]
    fn graeffe_brackets_the_value() {
        for p in [LEHMER, "z1^4+z1^2-z1-1", "3*z1^3 - 7*z1 + 2", "z1^6 - 1"] {
            let r = value(p);
            let [lo, hi] = r.detail.graeffe_bracket.unwrap();
            assert!(
                lo - 1e-9 <= r.value && r.value <= hi + 1e-9,
                "{p}: {lo} {} {hi}",
                r.value
            );
        }
    }

    #[test]
    fn constants_and_offsets() {
        let r = measure_uni(&UniPoly::from_i64(&[0, 0, -5])).unwrap();
        assert!((r.value - 5f64.ln()).abs() < 1e-15);
        assert!(measure_uni(&UniPoly::from_i64(&[0, 0])).is_err());
        let p = UniPoly::parse("z1^-3 + z1^-2 + z1^-1").unwrap();
        assert_eq!((p.offset(), p.degree()), (-3, 2));
        assert!(measure_uni(&p).unwrap().value.abs() < 1e-12);
    }

    #[test]
    fn complex_coefficients() {
        // (z - 2i)(z + 0.5)
        let i = Complex64::new(0.0, 1.0);
        let p = UniPoly::from_complex(
            0,
            vec![-i, Complex64::new(0.5, 0.0) - 2.0 * i, Complex64::new(1.0, 0.0)],
        );
        let r = measure_uni(&p).unwrap();
        assert!((r.value - 2f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn certificates() {
        assert!(zero_certificate(&UniPoly::from_i64(&[-1, 0, 0, 0, 1])).unwrap());
        assert!(!zero_certificate(&UniPoly::parse(LEHMER).unwrap()).unwrap());
        assert!(!zero_certificate(&UniPoly::from_i64(&[-1, -1, 0, 1])).unwrap());
        assert!(zero_certificate(&UniPoly::from_i64(&[-1])).unwrap());
        assert!(!zero_certificate(&UniPoly::from_i64(&[2])).unwrap());
        // (z-1)^4 (z^2+z+1)^2: repeated cyclotomic factors
        let p = LaurentPoly::from_terms(1, [(vec![0], 1i64), (vec![1], -1)]).unwrap();
        let q = LaurentPoly::from_terms(1, [(vec![0], 1i64), (vec![1], 1), (vec![2], 1)]).unwrap();
        let mut g = LaurentPoly::one(1);
        for h in [&p, &p, &p, &p, &q, &q] {
            g = g.mul(h).unwrap();
        }
        assert!(zero_certificate(&UniPoly::from_laurent(&g).unwrap()).unwrap());
        let complex = UniPoly::from_complex(0, vec![Complex64::new(1.0, 0.5), Complex64::new(1.0, 0.0)]);
        assert!(matches!(zero_certificate(&complex), Err(Error::NonIntegral)));
    }

    #[test]
    fn threshold_arithmetic() {
        assert!((mignotte_threshold(9.0) - 0.0385081).abs() < 1e-6);
    }
}
