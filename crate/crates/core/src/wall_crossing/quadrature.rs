//! Adaptive Gauss-Kronrod (7/15) quadrature of complex-valued functions.

use num_complex::Complex64;

use crate::error::{GlsmError, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 40;

/// One G7/K15 panel: the Kronrod value and `|K15 - G7|`.
fn panel(f: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut k = Complex64::new(0.0, 0.0);
    let mut g = Complex64::new(0.0, 0.0);
    for (i, (&x, &w)) in XGK.iter().zip(&WGK).enumerate() {
        let vals = if x == 0.0 { f(c) } else { f(c - h * x) + f(c + h * x) };
        k += vals * w;
        if i % 2 == 1 {
            g += vals * WG[i / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

fn adapt(f: &impl Fn(f64) -> Complex64, a: f64, b: f64, tol: f64, depth: u32) -> Result<(Complex64, f64)> {
    let (v, err) = panel(f, a, b);
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(GlsmError::Quadrature(format!("non-finite integrand on [{a}, {b}]")));
    }
    if err <= tol {
        return Ok((v, err));
    }
    if depth >= MAX_DEPTH {
        return Err(GlsmError::Quadrature(format!(
            "no convergence on [{a}, {b}], error {err:e}"
        )));
    }
    let m = 0.5 * (a + b);
    let (l, el) = adapt(f, a, m, 0.5 * tol, depth + 1)?;
    let (r, er) = adapt(f, m, b, 0.5 * tol, depth + 1)?;
    Ok((l + r, el + er))
}

/// `∫_a^b f`, to absolute tolerance `tol`. Returns the value and an error estimate.
pub fn integrate(f: impl Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Result<(Complex64, f64)> {
    adapt(&f, a, b, tol, 0)
}

/// `∫_0^∞ f` for an integrand that decays at least like `e^{-κt}` with
/// `κ > 0`. Panels of doubling length are added until both the panel and
/// the integrand fall below `tol`.
pub fn integrate_half_line(f: impl Fn(f64) -> Complex64, kappa: f64, tol: f64) -> Result<(Complex64, f64)> {
    if kappa <= 0.0 {
        return Err(GlsmError::Quadrature(format!(
            "integrand does not decay (rate {kappa})"
        )));
    }
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut a = 0.0;
    let mut len = (1.0 / kappa).min(1.0);
    for _ in 0..200 {
        let b = a + len;
        let (v, e) = adapt(&f, a, b, tol * 0.1, 0)?;
        total += v;
        err += e;
        if v.norm() < tol * 1e-2 && f(b).norm() * (1.0 / kappa) < tol * 1e-2 {
            return Ok((total, err));
        }
        a = b;
        len *= 1.5;
    }
    Err(GlsmError::Quadrature("tail did not decay".into()))
}
