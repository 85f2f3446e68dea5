use crate::error::{Error, Result};
use crate::lattice::{enumerate_shnf, shnf, IntMatrix};
use crate::laurent::{Coefficient, LaurentPoly};
use crate::measure_multi::{measure_of_family_member, MeasureConfig};
use crate::measure_uni::MeasureResult;
use num_bigint::BigInt;
use serde::Serialize;
use std::collections::HashMap;
use std::ops::RangeInclusive;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub h: IntMatrix,
    pub result: MeasureResult,
}

/// A matrix whose measure could not be computed, with the reason.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleFailure {
    pub h: IntMatrix,
    pub error: String,
}

/// `m(F_H)` for every saturated Hermite normal form `H` of bounded height
/// in a range of ranks, in enumeration order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumSample {
    pub polynomial: LaurentPoly,
    pub height: u64,
    pub ranks: (usize, usize),
    pub config: MeasureConfig,
    pub entries: Vec<SpectrumEntry>,
    /// Matrices with `F_H = 0`.
    pub vanishing: usize,
    pub failures: Vec<SampleFailure>,
    /// Entries answered from an earlier, equivalent substitution.
    pub memo_hits: usize,
    /// Sorted entry values with runs closer than `tolerance` merged.
    pub distinct_values: Vec<f64>,
    pub tolerance: f64,
}

/// [`sample_measure_set_ranks`] over all ranks `0..=k`.
pub fn sample_measure_set(f: &LaurentPoly, height: u64, cfg: &MeasureConfig) -> Result<SpectrumSample> {
    sample_measure_set_ranks(f, height, 0..=f.k(), cfg)
}

/// Measures `F_H` for each rank-`l` SHNF `H` with entries in
/// `[-height, height]` and `l` in `ranks`.
///
/// With `F = Σ c_i z^{j_i}`, `F_H` is a monomial times `L_{H·D}` where `L`
/// is the linear form `c_0 + Σ c_i w_i` and `D` has columns `j_i - j_0`.
/// The measure depends only on the SHNF of `H·D`, which serves as memo key,
/// and it is computed on that canonical form, which may need fewer
/// variables than `F_H`.
pub fn sample_measure_set_ranks(
    f: &LaurentPoly,
    height: u64,
    ranks: RangeInclusive<usize>,
    cfg: &MeasureConfig,
) -> Result<SpectrumSample> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    cfg.validate()?;
    let k = f.k();
    let (lo, hi) = (*ranks.start(), (*ranks.end()).min(k));
    let terms: Vec<(Vec<i64>, Coefficient)> = f.terms().map(|(e, c)| (e.as_slice().to_vec(), c.clone())).collect();
    let t = terms.len() - 1;
    let linear = LaurentPoly::from_terms(
        t,
        terms.iter().enumerate().map(|(i, (_, c))| {
            let mut e = vec![0; t];
            if i > 0 {
                e[i - 1] = 1;
            }
            (e, c.clone())
        }),
    )?;
    let j0 = &terms[0].0;
    let d_rows: Vec<Vec<BigInt>> = (0..k)
        .map(|r| terms[1..].iter().map(|(e, _)| BigInt::from(e[r] - j0[r])).collect())
        .collect();
    let d = IntMatrix::from_big_rows(d_rows, t)?;

    let mut sample = SpectrumSample {
        polynomial: f.clone(),
        height,
        ranks: (lo, hi),
        config: cfg.clone(),
        entries: Vec::new(),
        vanishing: 0,
        failures: Vec::new(),
        memo_hits: 0,
        distinct_values: Vec::new(),
        tolerance: cfg.tolerance,
    };
    let mut memo: HashMap<IntMatrix, std::result::Result<MeasureResult, String>> = HashMap::new();
    for l in lo..=hi {
        let forms = if l == 0 {
            vec![IntMatrix::zeros(0, k)]
        } else {
            enumerate_shnf(k, l, height)?
        };
        for h in forms {
            let key = shnf(&h.mul(&d)?).h;
            let outcome = match memo.get(&key) {
                Some(o) => {
                    sample.memo_hits += 1;
                    o.clone()
                }
                None => {
                    let o = match measure_of_family_member(&linear, &key, cfg) {
                        Ok(r) => Ok(r),
                        Err(Error::VanishingSubstitution) => Err(String::new()),
                        Err(e) => Err(e.to_string()),
                    };
                    memo.insert(key, o.clone());
                    o
                }
            };
            match outcome {
                Ok(mut result) => {
                    result.detail.h = Some(h.clone());
                    sample.entries.push(SpectrumEntry { h, result });
                }
                Err(e) if e.is_empty() => sample.vanishing += 1,
                Err(error) => sample.failures.push(SampleFailure { h, error }),
            }
        }
    }
    sample.distinct_values = dedup(sample.entries.iter().map(|e| e.result.value).collect(), cfg.tolerance);
    Ok(sample)
}

/// Sorts and merges each run of values whose neighbours are within `tol`
/// into the run's first element.
fn dedup(mut values: Vec<f64>, tol: f64) -> Vec<f64> {
    values.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for v in values {
        if v - prev > tol {
            out.push(v);
        }
        prev = v;
    }
    out
}

/// The smallest sampled value above the merge tolerance.
pub fn lehmer_element(sample: &SpectrumSample) -> Option<f64> {
    sample.distinct_values.iter().copied().find(|&v| v > sample.tolerance)
}

/// The largest sampled value, a lower bound for the largest element.
pub fn max_element(sample: &SpectrumSample) -> Result<f64> {
    sample.distinct_values.last().copied().ok_or(Error::EmptySample)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;
    use crate::measure_multi::LawtonSchedule;
    use crate::measure_uni::{measure_uni, UniPoly, ZeroTest};

    fn light() -> MeasureConfig {
        MeasureConfig {
            schedule: LawtonSchedule::new(vec![5, 9, 13, 17], 2000).unwrap(),
            nodes: 256,
            ..MeasureConfig::default()
        }
    }

    #[test]
    fn difference_of_variables_has_only_zero() {
        let f = parse_poly("z1 - z2", 2).unwrap();
        let s = sample_measure_set(&f, 2, &light()).unwrap();
        assert_eq!(s.distinct_values, vec![0.0]);
        assert!(s.vanishing > 0);
        assert_eq!(lehmer_element(&s), None);
        assert!(s
            .entries
            .iter()
            .all(|e| e.result.detail.zero_test == Some(ZeroTest::CertifiedZero)));
    }

    #[test]
    fn one_plus_z1_plus_z2_at_height_one() {
        let f = parse_poly("1+z1+z2", 2).unwrap();
        let s = sample_measure_set(&f, 1, &light()).unwrap();
        let has = |x: f64, tol: f64| s.distinct_values.iter().any(|v| (v - x).abs() < tol);
        assert!(has(3f64.ln(), 1e-15));
        let value_at = |rows: &[Vec<i64>]| {
            let h = IntMatrix::from_rows(rows).unwrap();
            s.entries.iter().find(|e| e.h == h).unwrap().result.value
        };
        // 1 + z + 1/z is cyclotomic up to a monomial; 1 + 2z is not
        assert_eq!(value_at(&[vec![1, -1]]), 0.0);
        assert!((value_at(&[vec![1, 1]]) - 2f64.ln()).abs() < 1e-15);
        assert!(has(0.3230659472194505, 1e-5));
        assert_eq!(s.entries[0].h, IntMatrix::zeros(0, 2));
        for e in &s.entries {
            assert_eq!(e.result.detail.h.as_ref(), Some(&e.h));
            assert!(e.h.is_hnf());
        }
        assert_eq!(max_element(&s).unwrap(), 3f64.ln());
    }

    #[test]
    fn univariate_has_two_entries() {
        let f = parse_poly("z1^3 - z1 - 1", 1).unwrap();
        let s = sample_measure_set(&f, 5, &light()).unwrap();
        assert_eq!(s.entries.len(), 2);
        assert_eq!(s.entries[0].result.value, 0.0);
        let m = measure_uni(&UniPoly::from_i64(&[-1, -1, 0, 1])).unwrap().value;
        assert!((s.entries[1].result.value - m).abs() < 1e-14);
        assert_eq!(lehmer_element(&s), Some(s.entries[1].result.value));
    }

    #[test]
    fn memo_reuses_equivalent_substitutions() {
        // a rank-one row (a, b) gives 1 + z^(a+b): measure log 2 when
        // a + b = 0 and 0 otherwise
        let f = parse_poly("1 + z1*z2", 2).unwrap();
        let s = sample_measure_set_ranks(&f, 3, 1..=1, &light()).unwrap();
        assert!(s.memo_hits > 0);
        assert_eq!(s.ranks, (1, 1));
        for e in &s.entries {
            let expect = if e.h.get(0, 0) + e.h.get(0, 1) == BigInt::from(0) {
                2f64.ln()
            } else {
                0.0
            };
            assert_eq!(e.result.value, expect, "{}", e.h);
        }
    }

    #[test]
    fn monomials_and_constants() {
        let s = sample_measure_set(&parse_poly("-3*z1*z2^2", 2).unwrap(), 1, &light()).unwrap();
        assert_eq!(s.distinct_values, vec![3f64.ln()]);
        let s = sample_measure_set(&LaurentPoly::constant(0, 2), 1, &light()).unwrap();
        assert_eq!(s.distinct_values, vec![2f64.ln()]);
        assert!(sample_measure_set(&LaurentPoly::zero(2), 1, &light()).is_err());
    }

    #[test]
    fn dedup_merges_runs() {
        assert_eq!(dedup(vec![0.5, 0.0, 1e-9, 0.5 + 1e-8], 1e-7), vec![0.0, 0.5]);
        let s = SpectrumSample {
            polynomial: LaurentPoly::one(1),
            height: 1,
            ranks: (0, 1),
            config: light(),
            entries: Vec::new(),
            vanishing: 0,
            failures: Vec::new(),
            memo_hits: 0,
            distinct_values: vec![0.0, 0.5],
            tolerance: 1e-7,
        };
        assert_eq!(lehmer_element(&s), Some(0.5));
        assert_eq!(max_element(&s).unwrap(), 0.5);
        let empty = SpectrumSample {
            distinct_values: vec![],
            ..s
        };
        assert!(matches!(max_element(&empty), Err(Error::EmptySample)));
    }
}
