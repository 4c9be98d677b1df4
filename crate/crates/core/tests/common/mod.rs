#![allow(dead_code, clippy::excessive_precision)]

use polariton_core::Complex64;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn kronrod(f: &mut dyn FnMut(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

/// Adaptive Gauss-Kronrod integration of a complex function.
pub fn integrate(f: &mut dyn FnMut(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Complex64 {
    fn rec(f: &mut dyn FnMut(f64) -> Complex64, a: f64, b: f64, tol: f64, depth: u32) -> Complex64 {
        let (v, err) = kronrod(f, a, b);
        if err <= tol || depth > 40 {
            return v;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, 0.5 * tol, depth + 1) + rec(f, m, b, 0.5 * tol, depth + 1)
    }
    if a == b {
        return Complex64::new(0.0, 0.0);
    }
    // Start from a few panels so that oscillatory integrands are resolved.
    let panels = 8;
    let w = (b - a) / panels as f64;
    (0..panels)
        .map(|i| rec(f, a + i as f64 * w, a + (i + 1) as f64 * w, tol / panels as f64, 0))
        .sum()
}

/// Composite trapezoid rule on `n` intervals.
pub fn trapezoid(f: impl Fn(f64) -> Complex64, a: f64, b: f64, n: usize) -> Complex64 {
    let h = (b - a) / n as f64;
    let mut s = (f(a) + f(b)) * 0.5;
    for i in 1..n {
        s += f(a + h * i as f64);
    }
    s * h
}

pub fn cis(x: f64) -> Complex64 {
    Complex64::new(x.cos(), x.sin())
}
