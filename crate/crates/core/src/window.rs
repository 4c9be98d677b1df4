//! Closed-form integrals of exponentials over the slab and exponential divided differences.

use num_complex::Complex64;

use crate::real;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    let (s, c) = real::sin_cos(theta);
    Complex64::new(c, s)
}

/// `sin(x)/x` with the removable singularity filled in.
#[inline]
pub fn sinc(x: f64) -> f64 {
    if real::abs(x) < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        real::sin(x) / x
    }
}

/// `∫_{-h}^{h} e^{ixz} dz = 2 sin(xh)/x`.
#[inline]
pub fn slab_transform(x: f64, half_length: f64) -> f64 {
    2.0 * half_length * sinc(x * half_length)
}

/// `slab_transform(x0 − 2πs/L)` evaluated without forming the large phase `sπ`.
///
/// Uses `sin((x0 − k_s)h) = (−1)^s sin(x0 h)`.
#[inline]
pub fn grid_slab_transform(x0: f64, s: i64, length: f64) -> f64 {
    let h = 0.5 * length;
    let x = x0 - 2.0 * core::f64::consts::PI * s as f64 / length;
    if real::abs(x * h) < 1e-4 {
        return slab_transform(x, h);
    }
    let sign = if s.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    2.0 * sign * real::sin(x0 * h) / x
}

/// `(e^{it} − 1)/(it)`, accurate for all real `t`.
#[inline]
pub fn phi1_imag(t: f64) -> Complex64 {
    let half = sinc(0.5 * t);
    Complex64::new(sinc(t), 0.5 * t * half * half)
}

/// First divided difference of `exp` at the imaginary nodes `iy0`, `iy1`.
#[inline]
pub fn exp_dd1(y0: f64, y1: f64) -> Complex64 {
    cis(y0) * phi1_imag(y1 - y0)
}

/// Second divided difference of `exp` at the imaginary nodes `iy0`, `iy1`, `iy2`.
pub fn exp_dd2(y0: f64, y1: f64, y2: f64) -> Complex64 {
    let mut ys = [y0, y1, y2];
    ys.sort_by(|a, b| a.total_cmp(b));
    let [lo, mid, hi] = ys;
    let spread = hi - lo;
    if spread >= 1.0 {
        return (exp_dd1(mid, hi) - exp_dd1(lo, mid)) / (I * spread);
    }
    // Series about the centroid: Σ_m h_m(w)/(m+2)! with complete homogeneous
    // symmetric polynomials h_m of the shifted nodes.
    let c = (lo + mid + hi) / 3.0;
    let w = [I * (lo - c), I * (mid - c), I * (hi - c)];
    // h_m(w0,w1,w2) via the recurrence over the number of variables.
    let mut p1 = [Complex64::new(1.0, 0.0); 40];
    for m in 1..40 {
        p1[m] = p1[m - 1] * w[0];
    }
    let mut p2 = p1;
    for m in 1..40 {
        p2[m] = p1[m] + w[1] * p2[m - 1];
    }
    let mut p3 = p2;
    for m in 1..40 {
        p3[m] = p2[m] + w[2] * p3[m - 1];
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut fact = 2.0;
    for (m, h) in p3.iter().enumerate() {
        let term = h / fact;
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
        fact *= (m + 3) as f64;
    }
    cis(c) * sum
}

/// `∫∫_{slab²} e^{iαz + iβz'} e^{iq|z−z'|} dz dz'` in closed form.
///
/// Exact for every real argument, including `β = ±q` and `α + β = 0`.
pub fn kernel_integral(alpha: f64, beta: f64, q: f64, length: f64) -> Complex64 {
    let h = 0.5 * length;
    let s = (alpha + beta) * length;
    let e1 = exp_dd2(0.0, (alpha + q) * length, s);
    let e2 = exp_dd2(0.0, (beta + q) * length, s);
    cis(-(alpha + beta) * h) * (length * length) * (e1 + e2)
}
