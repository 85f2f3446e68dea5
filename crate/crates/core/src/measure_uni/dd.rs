//! Double-double reals and complex numbers: an unevaluated sum `hi + lo`
//! carrying about 106 bits of significand.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Nearest double-double to an integer within the `f64` exponent range.
    pub fn from_bigint(x: &BigInt) -> Dd {
        let hi = x.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return Dd::from_f64(hi);
        }
        let rest = x - float_to_bigint(hi);
        let lo = rest.to_f64().unwrap_or(0.0);
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, o: f64) -> Dd {
        let (p, e) = two_prod(self.hi, o);
        let (hi, lo) = quick_two_sum(p, e + self.lo * o);
        Dd { hi, lo }
    }

    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul_f64(q1));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul_f64(q2));
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let s = self.hi.sqrt();
        let (p, e) = two_prod(s, s);
        let r = self.sub(Dd { hi: p, lo: e });
        Dd::from_f64(s).add(Dd::from_f64(r.hi / (2.0 * s)))
    }
}

fn float_to_bigint(x: f64) -> BigInt {
    num_traits::FromPrimitive::from_f64(x).unwrap_or_default()
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub fn new(re: Dd, im: Dd) -> CDd {
        CDd { re, im }
    }

    pub fn from_c64(z: Complex64) -> CDd {
        CDd::new(Dd::from_f64(z.re), Dd::from_f64(z.im))
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(self, o: CDd) -> CDd {
        CDd::new(self.re.add(o.re), self.im.add(o.im))
    }

    pub fn sub(self, o: CDd) -> CDd {
        CDd::new(self.re.sub(o.re), self.im.sub(o.im))
    }

    pub fn mul(self, o: CDd) -> CDd {
        CDd::new(
            self.re.mul(o.re).sub(self.im.mul(o.im)),
            self.re.mul(o.im).add(self.im.mul(o.re)),
        )
    }

    pub fn norm_sqr(self) -> Dd {
        self.re.mul(self.re).add(self.im.mul(self.im))
    }

    pub fn norm(self) -> Dd {
        self.norm_sqr().sqrt()
    }

    pub fn div(self, o: CDd) -> CDd {
        // Scale by a power of two first so |o|^2 cannot overflow.
        let s = o.re.hi.abs().max(o.im.hi.abs());
        let k = if s > 0.0 {
            (2f64).powi(-(s.log2().floor() as i32))
        } else {
            1.0
        };
        let o = CDd::new(o.re.mul_f64(k), o.im.mul_f64(k));
        let d = o.norm_sqr();
        let num = CDd::new(
            self.re.mul(o.re).add(self.im.mul(o.im)),
            self.im.mul(o.re).sub(self.re.mul(o.im)),
        );
        CDd::new(num.re.div(d).mul_f64(k), num.im.div(d).mul_f64(k))
    }
}
