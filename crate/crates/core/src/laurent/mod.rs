//! Sparse Laurent polynomials in `k` variables with exact integer
//! coefficients (complex doubles are accepted but only as an evaluation-side
//! convenience).
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration,
//! printing and hashing all follow the lexicographic order of exponents.

mod json;
mod parse;
mod polytope;

pub use parse::parse_poly;
pub use polytope::{coefficient_bounds, exponent_polytope, Polytope};

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::numeric::{bigint_to_f64, cis_turns, frac_product, log_abs_bigint};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Exponents of `z_1, ..., z_k` in one monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Self {
        ExponentVector(entries)
    }

    pub fn zero(k: usize) -> Self {
        ExponentVector(vec![0; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Int(BigInt),
    Complex(Complex64),
}

impl Coefficient {
    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Int(n) => n.is_zero(),
            Coefficient::Complex(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Coefficient::Int(_))
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Coefficient::Int(n) => Some(n),
            Coefficient::Complex(_) => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Coefficient::Int(n) => Complex64::new(bigint_to_f64(n), 0.0),
            Coefficient::Complex(z) => *z,
        }
    }

    pub fn abs(&self) -> f64 {
        match self {
            Coefficient::Int(n) => bigint_to_f64(n).abs(),
            Coefficient::Complex(z) => z.norm(),
        }
    }

    pub fn log_abs(&self) -> f64 {
        match self {
            Coefficient::Int(n) => log_abs_bigint(n),
            Coefficient::Complex(z) => z.norm().ln(),
        }
    }

    fn add(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Int(a), Coefficient::Int(b)) => Coefficient::Int(a + b),
            _ => Coefficient::Complex(self.to_complex() + other.to_complex()),
        }
    }

    fn mul(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Int(a), Coefficient::Int(b)) => Coefficient::Int(a * b),
            _ => Coefficient::Complex(self.to_complex() * other.to_complex()),
        }
    }

    fn neg(&self) -> Coefficient {
        match self {
            Coefficient::Int(a) => Coefficient::Int(-a),
            Coefficient::Complex(z) => Coefficient::Complex(-z),
        }
    }

    /// Builds a complex coefficient, collapsing to an exact integer when the
    /// value is integral.
    pub fn from_complex(z: Complex64) -> Coefficient {
        if z.im == 0.0 && z.re.is_finite() && z.re.fract() == 0.0 && z.re.abs() < 9.0e15 {
            Coefficient::Int(BigInt::from(z.re as i64))
        } else {
            Coefficient::Complex(z)
        }
    }
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Coefficient::Int(BigInt::from(n))
    }
}

impl From<BigInt> for Coefficient {
    fn from(n: BigInt) -> Self {
        Coefficient::Int(n)
    }
}

/// A Laurent polynomial `F(z_1, ..., z_k)`.
///
/// Invariants: no stored coefficient is zero and every exponent vector has
/// length `k`. The zero polynomial is the empty term map.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    k: usize,
    terms: BTreeMap<ExponentVector, Coefficient>,
}

impl LaurentPoly {
    pub fn zero(k: usize) -> Self {
        LaurentPoly {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(k: usize, c: impl Into<Coefficient>) -> Self {
        let mut p = LaurentPoly::zero(k);
        p.add_term(ExponentVector::zero(k), c.into());
        p
    }

    pub fn one(k: usize) -> Self {
        LaurentPoly::constant(k, 1)
    }

    /// `c * z^e`.
    pub fn monomial(exponents: Vec<i64>, c: impl Into<Coefficient>) -> Self {
        let k = exponents.len();
        let mut p = LaurentPoly::zero(k);
        p.add_term(ExponentVector(exponents), c.into());
        p
    }

    /// The variable `z_{index+1}` in a ring of `k` variables (0-based index).
    pub fn var(k: usize, index: usize) -> Result<Self> {
        if index >= k {
            return Err(Error::VariableOutOfRange { index: index + 1, k });
        }
        let mut e = vec![0; k];
        e[index] = 1;
        Ok(LaurentPoly::monomial(e, 1))
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I, C>(k: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, C)>,
        C: Into<Coefficient>,
    {
        let mut p = LaurentPoly::zero(k);
        for (e, c) in terms {
            if e.len() != k {
                return Err(Error::DimensionMismatch {
                    context: "exponent vector length",
                    expected: k,
                    found: e.len(),
                });
            }
            p.add_term(ExponentVector(e), c.into());
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Coefficient)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[i64]) -> Option<&Coefficient> {
        self.terms.get(&ExponentVector(e.to_vec()))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(Coefficient::is_integer)
    }

    /// The value of a polynomial whose only term is the constant one, if any.
    pub fn as_constant(&self) -> Option<Coefficient> {
        match self.terms.len() {
            0 => Some(Coefficient::Int(BigInt::zero())),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_origin().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Same polynomial viewed in `new_k >= k` variables.
    pub fn extend_vars(&self, new_k: usize) -> Result<Self> {
        if new_k < self.k {
            return Err(Error::InvalidArgument(format!(
                "cannot shrink a polynomial in {} variables to {new_k}",
                self.k
            )));
        }
        let mut p = LaurentPoly::zero(new_k);
        for (e, c) in &self.terms {
            let mut v = e.0.clone();
            v.resize(new_k, 0);
            p.terms.insert(ExponentVector(v), c.clone());
        }
        Ok(p)
    }

    fn check_same_k(&self, other: &LaurentPoly, context: &'static str) -> Result<()> {
        if self.k != other.k {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.k,
                found: other.k,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<Self> {
        self.check_same_k(other, "polynomial addition")?;
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            k: self.k,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Exact product.
    pub fn mul(&self, other: &LaurentPoly) -> Result<Self> {
        self.check_same_k(other, "polynomial multiplication")?;
        let mut p = LaurentPoly::zero(self.k);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.0.iter().zip(&e2.0).map(|(a, b)| a + b).collect();
                p.add_term(ExponentVector(e), c1.mul(c2));
            }
        }
        Ok(p)
    }

    /// Sum of the moduli of the coefficients.
    pub fn length(&self) -> f64 {
        self.terms.values().map(Coefficient::abs).sum()
    }

    /// Exact integer length, when all coefficients are integers.
    pub fn integer_length(&self) -> Option<BigInt> {
        let mut s = BigInt::zero();
        for c in self.terms.values() {
            s += c.as_int()?.abs();
        }
        Some(s)
    }

    /// The monomial substitution `F_A(z_1..z_l) = F(z^A)`: the term with
    /// exponent column `j` goes to exponent `A j`.
    pub fn substitute(&self, a: &IntMatrix) -> Result<Self> {
        if a.cols() != self.k {
            return Err(Error::DimensionMismatch {
                context: "substitution matrix columns",
                expected: self.k,
                found: a.cols(),
            });
        }
        let l = a.rows();
        let small = a.to_i64_rows();
        let mut p = LaurentPoly::zero(l);
        for (e, c) in &self.terms {
            let mut img = Vec::with_capacity(l);
            for i in 0..l {
                let v = match &small {
                    Some(rows) => {
                        let s: i128 = rows[i].iter().zip(&e.0).map(|(&x, &y)| x as i128 * y as i128).sum();
                        i64::try_from(s).map_err(|_| Error::ExponentOverflow)?
                    }
                    None => {
                        let mut s = BigInt::zero();
                        for (j, &y) in e.0.iter().enumerate() {
                            s += a.get(i, j) * y;
                        }
                        s.to_i64().ok_or(Error::ExponentOverflow)?
                    }
                };
                img.push(v);
            }
            p.add_term(ExponentVector(img), c.clone());
        }
        Ok(p)
    }

    /// `F(e^{2 pi i t_1}, ..., e^{2 pi i t_k})`, with every monomial phase
    /// reduced modulo one before exponentiation.
    pub fn evaluate(&self, angles: &[f64]) -> Result<Complex64> {
        if angles.len() != self.k {
            return Err(Error::DimensionMismatch {
                context: "evaluation angles",
                expected: self.k,
                found: angles.len(),
            });
        }
        let mut acc = Complex64::zero();
        for (e, c) in &self.terms {
            let mut phase = 0.0;
            for (&x, &t) in e.0.iter().zip(angles) {
                phase += frac_product(x, t);
            }
            acc += c.to_complex() * cis_turns(phase);
        }
        Ok(acc)
    }

    /// Componentwise minimum of the exponents (the zero vector for the zero
    /// polynomial).
    pub fn min_exponent(&self) -> ExponentVector {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return ExponentVector::zero(self.k);
        };
        let mut m = first.0.clone();
        for e in it {
            for (a, &b) in m.iter_mut().zip(&e.0) {
                *a = (*a).min(b);
            }
        }
        ExponentVector(m)
    }

    /// Divides out `z^v` with `v` the componentwise minimum exponent.
    /// Returns the shifted polynomial and `v`. The measure is unchanged.
    pub fn monomial_normalized(&self) -> (LaurentPoly, ExponentVector) {
        let v = self.min_exponent();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let s = e.0.iter().zip(&v.0).map(|(a, b)| a - b).collect();
                (ExponentVector(s), c.clone())
            })
            .collect();
        (LaurentPoly { k: self.k, terms }, v)
    }

    /// `z^shift * F`.
    pub fn shift(&self, shift: &[i64]) -> Result<Self> {
        if shift.len() != self.k {
            return Err(Error::DimensionMismatch {
                context: "monomial shift",
                expected: self.k,
                found: shift.len(),
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let s = e.0.iter().zip(shift).map(|(a, b)| a + b).collect();
                (ExponentVector(s), c.clone())
            })
            .collect();
        Ok(LaurentPoly { k: self.k, terms })
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        parse::format_poly(self, f)
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = Error;

    /// Parses with `k` inferred as the largest variable index present.
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_poly_infer(s)
    }
}
