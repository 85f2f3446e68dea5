use super::lawton::lawton_run;
use super::{jensen_2d, MeasureConfig};
use crate::error::{Error, Result};
use crate::lattice::{shnf, IntMatrix};
use crate::laurent::LaurentPoly;
use crate::measure_uni::{
    certify, measure_uni, mignotte_threshold, MeasureResult, Method, RootConfig, UniPoly, ZeroTest,
};
use crate::numeric::EPS;

/// `m(F_A)`, computed as `m(F_H)` with `H` the saturated Hermite form of
/// `A`, dispatching on the number of variables left:
///
/// - none: `log|F(1, ..., 1)|`
/// - one: roots, with the zero certificate for integer coefficients
/// - two: iterated Jensen, cross-checked by Lawton
/// - more: Lawton
///
/// A single-term `F_H` has measure `log|c|` exactly whatever the dimension.
pub fn measure_of_family_member(f: &LaurentPoly, a: &IntMatrix, cfg: &MeasureConfig) -> Result<MeasureResult> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if a.cols() != f.k() {
        return Err(Error::DimensionMismatch {
            context: "substitution matrix columns",
            expected: f.k(),
            found: a.cols(),
        });
    }
    cfg.validate()?;
    let h = shnf(a).h;
    let g = f.substitute(&h)?;
    if g.is_zero() {
        return Err(Error::VanishingSubstitution);
    }
    let mut r = measure_substituted(&g, cfg)?;
    r.detail.h = Some(h);
    r.config = Some(cfg.clone());
    Ok(r)
}

/// The dispatch on an already-substituted polynomial.
pub(crate) fn measure_substituted(g: &LaurentPoly, cfg: &MeasureConfig) -> Result<MeasureResult> {
    if g.num_terms() == 1 {
        let (_, c) = g.terms().next().expect("one term");
        let v = c.log_abs();
        let mut r = MeasureResult::new(v, EPS * v.abs(), Method::BoundsForced);
        if let Some(n) = c.as_int() {
            let unit = n.magnitude() == &num_bigint::BigUint::from(1u8);
            r.error_bound = 0.0;
            r.detail.zero_test = Some(if unit {
                ZeroTest::CertifiedZero
            } else {
                ZeroTest::CertifiedNonzero
            });
        }
        return Ok(r);
    }
    match g.k() {
        0 => unreachable!("a nonzero constant has one term"),
        1 => {
            let u = UniPoly::from_laurent(g)?;
            if !u.is_integral() {
                return measure_uni(&u);
            }
            match certify(&u, &RootConfig::default()) {
                Ok((_, r)) => Ok(r),
                Err(Error::Inconclusive { .. }) => {
                    let mut r = measure_uni(&u)?;
                    r.detail.notes.push("zero certificate inconclusive".into());
                    Ok(r)
                }
                Err(e) => Err(e),
            }
        }
        k => {
            let run = lawton_run(g, cfg)?;
            let mut lawton = run.result;
            if g.is_integral() && heuristic_zero(&lawton, &run.tail) {
                lawton.detail.notes.push(format!(
                    "largest specializations certified zero; estimate {:e} snapped to 0",
                    lawton.value
                ));
                lawton.value = 0.0;
                lawton.detail.zero_test = Some(ZeroTest::HeuristicZero);
                return Ok(lawton);
            }
            if k > 2 {
                return Ok(lawton);
            }
            let mut j = jensen_2d(g, cfg)?;
            j.detail.lawton_cross_check = Some(lawton.value);
            if (j.value - lawton.value).abs() > j.error_bound + lawton.error_bound {
                j.detail.notes.push(format!(
                    "Lawton estimate {} disagrees beyond the combined error bounds",
                    lawton.value
                ));
            }
            j.detail.trace = lawton.detail.trace;
            j.detail.skipped_n = lawton.detail.skipped_n;
            Ok(j)
        }
    }
}

/// Whether the two largest specializations both certify zero. Each has
/// length at most `length(F)`, so a positive measure would show up at
/// least `log 2 / (2 length(F))` above zero; skip the work otherwise.
fn heuristic_zero(lawton: &MeasureResult, tail: &[UniPoly]) -> bool {
    if tail.len() < 2 {
        return false;
    }
    let worst = tail.iter().map(|u| u.length()).fold(0.0, f64::max);
    if lawton.value - lawton.error_bound >= mignotte_threshold(worst) {
        return false;
    }
    tail.iter()
        .all(|u| matches!(certify(u, &RootConfig::default()), Ok((true, _))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;
    use crate::measure_multi::LawtonSchedule;

    fn light() -> MeasureConfig {
        MeasureConfig {
            schedule: LawtonSchedule::new(vec![5, 9, 13, 17], 2000).unwrap(),
            nodes: 512,
            ..MeasureConfig::default()
        }
    }

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn examples() {
        let f = parse_poly("1+z1+z2", 2).unwrap();
        let r = measure_of_family_member(&f, &IntMatrix::zeros(0, 2), &light()).unwrap();
        assert_eq!(r.value, 3f64.ln());
        assert_eq!(r.method, Method::BoundsForced);

        let r = measure_of_family_member(&f, &m(&[vec![1, 2]]), &light()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.detail.zero_test, Some(ZeroTest::CertifiedZero));

        let direct = jensen_2d(&f, &light()).unwrap().value;
        let r = measure_of_family_member(&f, &m(&[vec![2, 1], vec![1, 1]]), &light()).unwrap();
        assert_eq!(r.detail.h, Some(IntMatrix::identity(2)));
        assert_eq!(r.value, direct);
        assert_eq!(r.method, Method::Jensen2d);
        let d = (r.detail.lawton_cross_check.unwrap() - r.value).abs();
        assert!(d < 5e-3, "{d}");
    }

    #[test]
    fn vanishing_and_mismatch() {
        let f = parse_poly("z1 - z2", 2).unwrap();
        assert!(matches!(
            measure_of_family_member(&f, &m(&[vec![1, 1]]), &light()),
            Err(Error::VanishingSubstitution)
        ));
        assert!(measure_of_family_member(&f, &m(&[vec![1, 1, 1]]), &light()).is_err());
    }

    #[test]
    fn multivariate_zero_heuristic() {
        // (1 + z1 z2)(z1 - z2^2) in three variables padded with z3
        let f = parse_poly("(z1 - z2^2)", 3).ok();
        assert!(f.is_none());
        let f = parse_poly("z1 - z2^2 + z1^2*z2 - z1*z2^3 + 0*z3", 3).unwrap();
        let r = measure_of_family_member(&f, &IntMatrix::identity(3), &light()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.detail.zero_test, Some(ZeroTest::HeuristicZero));
    }

    #[test]
    fn unimodular_change_selects_same_form() {
        let f = parse_poly("1 + z1 + z2 - z3 + 2*z1*z3", 3).unwrap();
        let a = m(&[vec![1, 2, 0], vec![0, 1, 3]]);
        let v = m(&[vec![2, 1], vec![1, 1]]);
        let ra = measure_of_family_member(&f, &a, &light()).unwrap();
        let rb = measure_of_family_member(&f, &v.mul(&a).unwrap(), &light()).unwrap();
        assert_eq!(ra.detail.h, rb.detail.h);
        assert_eq!(ra.value, rb.value);
    }
}
