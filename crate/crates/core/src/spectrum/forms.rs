use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::laurent::{Coefficient, LaurentPoly};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

/// Largest number of generators [`mb_generators`] will emit.
pub const MAX_GENERATORS: usize = 1 << 22;

/// `z1 + z3 + … + z_{2n-1} - (z2 + z4 + … + z_{2n})`.
pub fn linear_form_f_n(n: usize) -> Result<LaurentPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let k = 2 * n;
    LaurentPoly::from_terms(
        k,
        (0..k).map(|i| {
            let mut e = vec![0; k];
            e[i] = 1;
            (e, BigInt::from(if i % 2 == 0 { 1 } else { -1 }))
        }),
    )
}

/// `G = (z1 - 1)·F` written as a substitution of the linear form with
/// `2n` terms: `linear_form_f_n(n)` under `a` equals `g`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Embedding {
    pub n: usize,
    pub a: IntMatrix,
    pub g: LaurentPoly,
}

/// Embeds integer `F` in the measure set of a linear form: with
/// `G = (z1 - 1)·F`, each exponent `j` of `G` contributes `|c(j)|` columns
/// equal to `j`, at odd positions (1-based) for positive and even positions
/// for negative coefficients, terms taken in descending lexicographic order.
/// Since `G(1, …, 1) = 0` both kinds fill exactly `n` columns.
pub fn embed_in_linear_form(f: &LaurentPoly) -> Result<Embedding> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_integral() {
        return Err(Error::NonIntegral);
    }
    let f = if f.k() == 0 { f.extend_vars(1)? } else { f.clone() };
    let k = f.k();
    let mut z1_minus_1 = LaurentPoly::var(k, 0)?;
    z1_minus_1 = z1_minus_1.sub(&LaurentPoly::one(k))?;
    let g = z1_minus_1.mul(&f)?;
    let mut pos: Vec<&[i64]> = Vec::new();
    let mut neg: Vec<&[i64]> = Vec::new();
    for (e, c) in g.terms().rev() {
        let c = c.as_int().expect("integral");
        let count = c
            .abs()
            .to_usize()
            .filter(|&m| m <= MAX_GENERATORS)
            .ok_or_else(|| Error::InvalidArgument("coefficients too large to embed".into()))?;
        let side = if c.is_positive() { &mut pos } else { &mut neg };
        side.extend(std::iter::repeat_n(e.as_slice(), count));
    }
    debug_assert_eq!(pos.len(), neg.len());
    let n = pos.len();
    let mut a = IntMatrix::zeros(k, 2 * n);
    for (i, (p, q)) in pos.iter().zip(&neg).enumerate() {
        for r in 0..k {
            a.set(r, 2 * i, BigInt::from(p[r]));
            a.set(r, 2 * i + 1, BigInt::from(q[r]));
        }
    }
    Ok(Embedding { n, a, g })
}

/// Nonzero parts with nondecreasing moduli.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedPartition {
    pub parts: Vec<i64>,
}

impl SignedPartition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidArgument("parts must be nonzero and nonempty".into()));
        }
        if parts.windows(2).any(|w| w[0].abs() > w[1].abs()) {
            return Err(Error::InvalidArgument("part moduli must be nondecreasing".into()));
        }
        Ok(SignedPartition { parts })
    }

    /// `b = Σ |c_i|`.
    pub fn total(&self) -> u64 {
        self.parts.iter().map(|c| c.unsigned_abs()).sum()
    }

    /// `c1 z1 + … + ct zt`.
    pub fn linear_form(&self) -> LaurentPoly {
        let t = self.parts.len();
        LaurentPoly::from_terms(
            t,
            self.parts.iter().enumerate().map(|(i, &c)| {
                let mut e = vec![0; t];
                e[i] = 1;
                (e, Coefficient::Int(BigInt::from(c)))
            }),
        )
        .expect("distinct exponents")
    }
}

/// Every signed partition of every `b ≤ bound` with its linear form;
/// ordered by `b`, then by number of parts, then lexicographically by
/// moduli, then by sign pattern with `+` before `-` from the first part.
pub fn mb_generators(bound: u64) -> Result<Vec<(SignedPartition, LaurentPoly)>> {
    if bound == 0 {
        return Err(Error::InvalidArgument("bound must be positive".into()));
    }
    let mut out = Vec::new();
    for b in 1..=bound {
        let mut unsigned = Vec::new();
        partitions(b, 1, &mut Vec::new(), &mut unsigned);
        unsigned.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        for p in unsigned {
            let t = p.len();
            if t >= 63 || out.len() + (1usize << t) > MAX_GENERATORS {
                return Err(Error::InvalidArgument(format!("more than {MAX_GENERATORS} generators")));
            }
            for signs in 0..1u64 << t {
                let parts: Vec<i64> = p
                    .iter()
                    .enumerate()
                    .map(|(i, &m)| {
                        if signs >> (t - 1 - i) & 1 == 1 {
                            -(m as i64)
                        } else {
                            m as i64
                        }
                    })
                    .collect();
                let sp = SignedPartition { parts };
                let form = sp.linear_form();
                out.push((sp, form));
            }
        }
    }
    Ok(out)
}

/// Partitions of `rest` into parts `≥ min`, nondecreasing.
fn partitions(rest: u64, min: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for p in min..=rest {
        cur.push(p);
        partitions(rest - p, p, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_poly;

    #[test]
    fn linear_forms() {
        assert_eq!(linear_form_f_n(1).unwrap(), parse_poly("z1 - z2", 2).unwrap());
        assert_eq!(linear_form_f_n(2).unwrap(), parse_poly("z1 + z3 - z2 - z4", 4).unwrap());
        assert_eq!(linear_form_f_n(5).unwrap().length(), 10.0);
        assert!(linear_form_f_n(0).is_err());
    }

    #[test]
    fn embedding_examples() {
        let e = embed_in_linear_form(&LaurentPoly::one(0)).unwrap();
        assert_eq!(e.n, 1);
        assert_eq!(e.a, IntMatrix::from_rows(&[vec![1, 0]]).unwrap());
        assert_eq!(e.g, parse_poly("z1 - 1", 1).unwrap());

        let f = parse_poly("1+z1+z2", 2).unwrap();
        let e = embed_in_linear_form(&f).unwrap();
        assert_eq!(e.n, 2);
        assert_eq!(
            e.a,
            IntMatrix::from_rows(&[vec![2, 0, 1, 0], vec![0, 1, 1, 0]]).unwrap()
        );
        assert_eq!(e.g, parse_poly("z1^2 + z1*z2 - z2 - 1", 2).unwrap());
        assert_eq!(linear_form_f_n(2).unwrap().substitute(&e.a).unwrap(), e.g);
    }

    #[test]
    fn embedding_with_repeated_columns() {
        let f = parse_poly("3 - 2*z1^-1*z2", 2).unwrap();
        let e = embed_in_linear_form(&f).unwrap();
        assert_eq!(linear_form_f_n(e.n).unwrap().substitute(&e.a).unwrap(), e.g);
        assert!(embed_in_linear_form(&LaurentPoly::zero(2)).is_err());
    }

    #[test]
    fn generators_for_small_bounds() {
        let g = mb_generators(1).unwrap();
        let parts: Vec<Vec<i64>> = g.iter().map(|(p, _)| p.parts.clone()).collect();
        assert_eq!(parts, vec![vec![1], vec![-1]]);
        assert_eq!(g[1].1, parse_poly("-z1", 1).unwrap());

        let g = mb_generators(2).unwrap();
        let parts: Vec<Vec<i64>> = g.iter().map(|(p, _)| p.parts.clone()).collect();
        assert_eq!(
            parts,
            vec![
                vec![1],
                vec![-1],
                vec![2],
                vec![-2],
                vec![1, 1],
                vec![1, -1],
                vec![-1, 1],
                vec![-1, -1]
            ]
        );
        assert_eq!(g[5].1, parse_poly("z1 - z2", 2).unwrap());
    }

    #[test]
    fn generator_count_matches_partition_sum() {
        // brute force: all nonzero vectors with nondecreasing moduli and total at most 6
        let bound = 6i64;
        let mut expect = 0;
        fn count(prev: i64, left: i64) -> usize {
            let mut n = 0;
            for m in prev.max(1)..=left {
                // one part of modulus m, then anything after it
                n += 2 * (1 + count(m, left - m));
            }
            n
        }
        expect += count(1, bound);
        let g = mb_generators(bound as u64).unwrap();
        assert_eq!(g.len(), expect);
        for (p, form) in &g {
            assert_eq!(SignedPartition::new(p.parts.clone()).as_ref(), Ok(p));
            assert_eq!(form.integer_length().unwrap(), BigInt::from(p.total()));
            assert!(p.total() <= bound as u64);
        }
    }

    #[test]
    fn signed_partition_validation() {
        assert!(SignedPartition::new(vec![]).is_err());
        assert!(SignedPartition::new(vec![1, 0]).is_err());
        assert!(SignedPartition::new(vec![-2, 1]).is_err());
        assert_eq!(SignedPartition::new(vec![1, -1, 3]).unwrap().total(), 5);
    }
}
