//! Simultaneous root refinement (Aberth-Ehrlich, Gauss-Seidel sweeps),
//! generic over the working precision.

use super::dd::{CDd, Dd};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Complex arithmetic at some working precision.
pub(crate) trait Field: Copy {
    /// Unit roundoff of one arithmetic operation.
    const UNIT_ROUNDOFF: f64;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_c64(z: Complex64) -> Self;
    fn from_real(x: f64) -> Self;
    fn to_c64(self) -> Complex64;
    fn add(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn mul(self, o: Self) -> Self;
    fn div(self, o: Self) -> Self;
    /// `|self|`, rounded to a double.
    fn modulus(self) -> f64;
}

impl Field for Complex64 {
    const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn to_c64(self) -> Complex64 {
        self
    }
    #[inline]
    fn add(self, o: Self) -> Self {
        self + o
    }
    #[inline]
    fn sub(self, o: Self) -> Self {
        self - o
    }
    #[inline]
    fn mul(self, o: Self) -> Self {
        self * o
    }
    #[inline]
    fn div(self, o: Self) -> Self {
        self / o
    }
    #[inline]
    fn modulus(self) -> f64 {
        self.norm()
    }
}

impl Field for CDd {
    const UNIT_ROUNDOFF: f64 = 1.0 / (1u128 << 104) as f64;
    fn zero() -> Self {
        CDd::default()
    }
    fn one() -> Self {
        CDd::new(Dd::ONE, Dd::ZERO)
    }
    fn from_c64(z: Complex64) -> Self {
        CDd::from_c64(z)
    }
    fn from_real(x: f64) -> Self {
        CDd::new(Dd::from_f64(x), Dd::ZERO)
    }
    fn to_c64(self) -> Complex64 {
        CDd::to_c64(self)
    }
    fn add(self, o: Self) -> Self {
        CDd::add(self, o)
    }
    fn sub(self, o: Self) -> Self {
        CDd::sub(self, o)
    }
    fn mul(self, o: Self) -> Self {
        CDd::mul(self, o)
    }
    fn div(self, o: Self) -> Self {
        CDd::div(self, o)
    }
    fn modulus(self) -> f64 {
        self.norm().to_f64()
    }
}

/// Newton data at one point.
pub(crate) struct NewtonData<F> {
    /// `p(z) / p'(z)`
    pub ratio: F,
    /// Radius of a disk about `z` guaranteed to contain a root, allowing for
    /// rounding in the evaluation: `d·|p/p'|` with both values widened.
    pub radius: f64,
    /// The computed `|p(z)|` is within its rounding error bound.
    pub at_noise: bool,
}

/// Horner for the value and derivative, highest coefficient first, with
/// the absolute sums needed for running error bounds.
#[inline]
fn horner<F: Field>(coefs: impl Iterator<Item = (F, f64)>, x: F, ax: f64) -> (F, F, f64, f64) {
    let mut v = F::zero();
    let mut dv = F::zero();
    let mut s = 0.0;
    let mut ds = 0.0;
    for (c, ac) in coefs {
        dv = dv.mul(x).add(v);
        ds = ds * ax + s;
        v = v.mul(x).add(c);
        s = s * ax + ac;
    }
    (v, dv, s, ds)
}

/// Evaluates at `z` directly when `|z| <= 1` and through the reversed
/// polynomial otherwise, so Horner never multiplies by a modulus above one.
pub(crate) fn newton<F: Field>(c: &[F], ac: &[f64], z: F) -> NewtonData<F> {
    let d = c.len() - 1;
    let df = d as f64;
    let g = 8.0 * (d as f64 + 2.0) * F::UNIT_ROUNDOFF;
    let az = z.modulus();
    if az <= 1.0 {
        let (v, dv, s, ds) = horner(c.iter().rev().copied().zip(ac.iter().rev().copied()), z, az);
        let (e, ed) = (g * s, g * ds);
        let av = v.modulus();
        NewtonData {
            ratio: v.div(dv),
            radius: widen(df * (av + e), dv.modulus() - ed),
            at_noise: av <= e,
        }
    } else {
        let w = F::one().div(z);
        let aw = 1.0 / az;
        let (q, dq, s, ds) = horner(c.iter().copied().zip(ac.iter().copied()), w, aw);
        let (e, ed) = (g * s, g * ds);
        let den = q.mul(F::from_real(df)).sub(w.mul(dq));
        let eden = df * e + aw * ed;
        let aq = q.modulus();
        NewtonData {
            ratio: z.mul(q).div(den),
            radius: widen(df * az * (aq + e), den.modulus() - eden),
            at_noise: aq <= e,
        }
    }
}

fn widen(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        f64::INFINITY
    }
}

/// Starting points on circles whose radii come from the upper convex hull
/// of `(i, log|c_i|)` (the Newton polygon), one circle per hull edge.
pub(crate) fn initial_points(ac: &[f64]) -> Vec<Complex64> {
    let d = ac.len() - 1;
    let pts: Vec<(usize, f64)> = ac
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0.0)
        .map(|(i, &a)| (i, a.ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(d);
    for e in hull.windows(2) {
        let (i0, l0) = e[0];
        let (i1, l1) = e[1];
        let n = i1 - i0;
        let r = ((l0 - l1) / n as f64).exp();
        for m in 0..n {
            let theta = TAU * (m as f64 / n as f64 + i0 as f64 / d as f64) + 0.4;
            out.push(Complex64::from_polar(r, theta));
        }
    }
    out
}

pub(crate) struct Solve<F> {
    pub roots: Vec<F>,
    pub radii: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Refines `start` towards the roots of `c` (lowest degree first). A root
/// is frozen once its inclusion radius drops below `tol·(1+|z|)` or the
/// residual reaches the rounding level.
pub(crate) fn aberth<F: Field>(c: &[F], start: Vec<F>, tol: f64, max_iter: usize) -> Solve<F> {
    let d = c.len() - 1;
    let ac: Vec<f64> = c.iter().map(|x| x.modulus()).collect();
    let mut z = start;
    let mut done = vec![false; d];
    let mut iterations = 0;
    while iterations < max_iter && done.iter().any(|x| !x) {
        iterations += 1;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let nd = newton(c, &ac, z[i]);
            if nd.at_noise || nd.radius < tol * (1.0 + z[i].modulus()) {
                done[i] = true;
                continue;
            }
            let zi = z[i];
            let mut s = F::zero();
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    s = s.add(F::one().div(zi.sub(zj)));
                }
            }
            let step = nd.ratio.div(F::one().sub(nd.ratio.mul(s)));
            let sc = step.to_c64();
            z[i] = if sc.re.is_finite() && sc.im.is_finite() {
                zi.sub(step)
            } else {
                zi.mul(F::from_c64(Complex64::new(1.0 + 1e-7, 1e-7)))
            };
        }
    }
    let radii = z.iter().map(|&zi| newton(c, &ac, zi).radius).collect();
    Solve {
        roots: z,
        radii,
        iterations,
        converged: done.iter().all(|&x| x),
    }
}
