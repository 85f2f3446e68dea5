//! Integer polynomial gcd in one variable, used to split off factors of
//! `F(z1, z2)` that depend on `z1` alone.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Dense coefficients, lowest degree first, no trailing zeros.
pub(crate) type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with a positive leading coefficient.
fn primitive(p: Poly) -> Poly {
    let p = trim(p);
    let Some(lead) = p.last() else { return p };
    let mut c = content(&p);
    if lead.is_negative() {
        c = -c;
    }
    p.into_iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
fn prem(a: &[BigInt], b: &[BigInt]) -> Poly {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (i, bi) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * bi;
        }
        r = trim(r);
    }
    r
}

/// Greatest common divisor, primitive with positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Poly {
    let (mut a, mut b) = (primitive(a.to_vec()), primitive(b.to_vec()));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(prem(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// Exact quotient `a / b`, or `None` if `b` does not divide `a` over Z.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Poly> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let (c, rem) = r[dr].div_rem(&b[db]);
        if !rem.is_zero() {
            return None;
        }
        for (i, bi) in b.iter().enumerate() {
            r[dr - db + i] -= &c * bi;
        }
        q[dr - db] = c;
        r = trim(r);
    }
    r.is_empty().then_some(q)
}
