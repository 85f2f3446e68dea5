use mahler_core::lattice::is_saturated;
use mahler_core::laurent::{coefficient_bounds, parse_poly};
use mahler_core::measure_multi::{measure_of_family_member, LawtonSchedule, MeasureConfig};
use mahler_core::measure_uni::{measure_uni, mignotte_threshold, UniPoly};
use mahler_core::spectrum::{
    lehmer_element, linear_form_f_n, max_element, sample_measure_set, sample_measure_set_ranks, SpectrumSample,
};
use mahler_core::{IntMatrix, LaurentPoly};

fn light() -> MeasureConfig {
    MeasureConfig {
        schedule: LawtonSchedule::new(vec![5, 9, 13, 17], 2000).unwrap(),
        nodes: 256,
        ..MeasureConfig::default()
    }
}

fn contains(s: &SpectrumSample, v: f64) -> bool {
    s.distinct_values.iter().any(|x| (x - v).abs() <= s.tolerance)
}

fn value_at(s: &SpectrumSample, rows: &[Vec<i64>]) -> f64 {
    let h = IntMatrix::from_rows(rows).unwrap();
    s.entries
        .iter()
        .find(|e| e.h == h)
        .expect("matrix sampled")
        .result
        .value
}

#[test]
fn entries_are_saturated_hermite_forms_and_values_sorted() {
    let f = parse_poly("2 + z1 - z2^2 + z1*z2", 2).unwrap();
    let s = sample_measure_set(&f, 2, &light()).unwrap();
    for e in &s.entries {
        assert!(e.h.is_hnf());
        assert!(is_saturated(&e.h).unwrap());
    }
    assert!(s.distinct_values.windows(2).all(|w| w[1] - w[0] > s.tolerance));
    assert!(s.failures.is_empty());
}

#[test]
fn exhaustion_is_monotone_in_height() {
    for text in ["1 + z1 + z2", "z1^2 - z2 + 3", "1 + z1 - z1*z2^-1"] {
        let f = parse_poly(text, 2).unwrap();
        let mut prev: Option<SpectrumSample> = None;
        for h in 1..=3 {
            let s = sample_measure_set(&f, h, &light()).unwrap();
            if let Some(p) = &prev {
                assert!(p.entries.len() < s.entries.len());
                for &v in &p.distinct_values {
                    assert!(contains(&s, v), "{text}: {v} lost at height {h}");
                }
            }
            prev = Some(s);
        }
    }
}

#[test]
fn linear_forms_nest() {
    let small = sample_measure_set(&linear_form_f_n(1).unwrap(), 2, &light()).unwrap();
    assert_eq!(small.distinct_values, vec![0.0]);
    let big = sample_measure_set_ranks(&linear_form_f_n(2).unwrap(), 3, 0..=1, &light()).unwrap();
    for &v in &small.distinct_values {
        assert!(contains(&big, v));
    }
    // sending z3 and z4 to 1 reproduces each entry of the smaller form
    for e in &small.entries {
        let rows: Vec<Vec<i64>> =
            e.h.to_i64_rows()
                .unwrap()
                .into_iter()
                .map(|r| [r, vec![0, 0]].concat())
                .collect();
        let a = if rows.is_empty() {
            IntMatrix::zeros(0, 4)
        } else {
            IntMatrix::from_rows(&rows).unwrap()
        };
        let r = measure_of_family_member(&linear_form_f_n(2).unwrap(), &a, &light()).unwrap();
        assert_eq!(r.value, e.result.value);
    }
}

#[test]
fn lehmer_and_max_for_two_pair_linear_form() {
    let f = linear_form_f_n(2).unwrap();
    let s = sample_measure_set_ranks(&f, 4, 0..=1, &light()).unwrap();
    let cubic = measure_uni(&UniPoly::from_i64(&[-1, -1, 0, 1])).unwrap().value;
    // z^4 - z^3 - z^2 + 1 = (z - 1)(z^3 - z - 1)
    assert!((value_at(&s, &[vec![4, 3, 0, 2]]) - cubic).abs() < 1e-12);
    assert!((lehmer_element(&s).unwrap() - cubic).abs() < 1e-8);
    // z^4 + z^2 - z - 1 has measure 2 m(z^3 - z - 1)
    let twice = value_at(&s, &[vec![4, 1, 2, 0]]);
    assert!((twice - 1.75487766624669f64.ln()).abs() < 1e-10);
    assert!(max_element(&s).unwrap() >= twice);
}

#[test]
fn positive_values_respect_the_mignotte_bound() {
    for text in ["1 + z1 + z2", "z1 - z2 + z1*z2 - 1 + z1^2", "3 - z1*z2 + z2^2"] {
        let f = parse_poly(text, 2).unwrap();
        let s = sample_measure_set(&f, 2, &light()).unwrap();
        let threshold = mignotte_threshold(f.length());
        if let Some(l) = lehmer_element(&s) {
            assert!(l >= threshold - s.tolerance, "{text}: {l} < {threshold}");
        }
    }
}

#[test]
fn max_element_within_coefficient_bounds() {
    let f = parse_poly("5 + z1 + z2", 2).unwrap();
    let s = sample_measure_set(&f, 2, &light()).unwrap();
    let (lo, hi) = coefficient_bounds(&f).unwrap();
    let m = max_element(&s).unwrap();
    assert!(m >= lo - 1e-12 && m <= hi + 1e-12);
    assert!(m >= 5f64.ln() - 1e-12);
}

#[test]
fn cyclotomic_factor_does_not_add_values() {
    // m(((z1 - 1) F)_H) = m(F_H) whenever the first column of H is nonzero;
    // otherwise the product vanishes and the entry is skipped.
    for text in ["1 + z1 + z2", "2 - z1*z2 + z2^3"] {
        let f = parse_poly(text, 2).unwrap();
        let z1 = LaurentPoly::var(2, 0).unwrap();
        let g = z1.sub(&LaurentPoly::one(2)).unwrap().mul(&f).unwrap();
        let sf = sample_measure_set(&f, 2, &light()).unwrap();
        let sg = sample_measure_set(&g, 2, &light()).unwrap();
        for eg in &sg.entries {
            let ef = sf.entries.iter().find(|e| e.h == eg.h).unwrap();
            let tol = ef.result.error_bound + eg.result.error_bound + 1e-9;
            assert!((ef.result.value - eg.result.value).abs() <= tol, "{text} at {}", eg.h);
        }
        for &v in &sg.distinct_values {
            assert!(sf.distinct_values.iter().any(|x| (x - v).abs() < 1e-6), "{text}: {v}");
        }
        let skipped: usize = sf
            .entries
            .iter()
            .filter(|e| (0..e.h.rows()).all(|r| e.h.get(r, 0) == &0.into()))
            .count();
        assert_eq!(sg.entries.len() + skipped, sf.entries.len());
    }
}
