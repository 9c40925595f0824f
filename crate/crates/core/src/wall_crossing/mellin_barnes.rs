//! Mellin-Barnes check of the scalar continuation.
//!
//! The integrand is
//!
//! ```text
//! q^s/(e^{2πis}-1) · Γ(1+3s)/(Γ(1+s-β_a)Γ(1+s)^2)
//! ```
//!
//! integrated downwards along two rays leaving `s = -1/6`, which separates
//! the poles at `s ∈ Z_{≥0}` from those at `s ∈ (1/3)Z_{<0}`. Along the
//! vertical line the integrand only decays polynomially in one direction,
//! so each ray is tilted to the angle of fastest exponential decay.
//!
//! For `|q| < 1/27` the integral equals `Σ_{n≥0} q^n Γ(1+3n)/(Γ(1+n-β_a) n!^2)`;
//! for `|q| > 1/27` it equals `-Σ c_0 I_x(β) q^{β_x}/Γ(1-<β_a>)` over the
//! fractional negative `β_x`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::connection_coeffs;
use super::quadrature::integrate_half_line;
use crate::error::{GlsmError, Result};
use crate::gamma_kit::{gamma, gamma_factor_sub, ln_gamma};
use crate::thirds::Thirds;

/// Real point where the contour crosses the axis.
pub const CROSSING: f64 = -1.0 / 6.0;

/// Radius of convergence of the positive residue series.
pub const RADIUS: f64 = 1.0 / 27.0;

const ANGLE_STEPS: u32 = 24;

fn ln_integrand(s: Complex64, ln_q: Complex64, beta_a: f64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    // log of 1/(e^{2πis} - 1), written to avoid overflow for Im s < 0
    let ln_denominator = if s.im >= 0.0 {
        -((two_pi_i * s).exp() - one).ln()
    } else {
        -two_pi_i * s - (one - (-two_pi_i * s).exp()).ln()
    };
    s * ln_q + ln_denominator + ln_gamma(one + s * 3.0) - ln_gamma(one + s - beta_a) - ln_gamma(one + s) * 2.0
}

pub fn integrand(s: Complex64, q: Complex64, beta_a: f64) -> Complex64 {
    ln_integrand(s, q.ln(), beta_a).exp()
}

/// Exponential decay rate of the integrand along the ray of angle `phi`.
fn decay_rate(phi: f64, ln_q: Complex64) -> f64 {
    let growth = phi.cos() * (ln_q.re + 27f64.ln()) - phi.sin() * ln_q.im;
    let damping = if phi < 0.0 { 2.0 * PI * phi.sin() } else { 0.0 };
    -(growth + damping)
}

fn best_ray(ln_q: Complex64, upper: bool) -> (f64, f64) {
    (1..ANGLE_STEPS)
        .map(|k| {
            let phi = PI * k as f64 / ANGLE_STEPS as f64;
            if upper {
                phi
            } else {
                -phi
            }
        })
        .map(|phi| (phi, decay_rate(phi, ln_q)))
        .fold((0.0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourIntegral {
    pub value: Complex64,
    pub error_estimate: f64,
    pub upper_angle: f64,
    pub lower_angle: f64,
}

/// `∫ ds` downwards along the tilted contour through `-1/6`.
pub fn contour_integral(q: Complex64, beta_a: f64, tol: f64) -> Result<ContourIntegral> {
    if q.norm() == 0.0 {
        return Err(GlsmError::ZeroQ("q"));
    }
    let ln_q = q.ln();
    let start = Complex64::new(CROSSING, 0.0);
    let mut value = Complex64::new(0.0, 0.0);
    let mut error_estimate = 0.0;
    let mut angles = [0.0; 2];
    for (i, upper) in [true, false].into_iter().enumerate() {
        let (phi, kappa) = best_ray(ln_q, upper);
        let dir = Complex64::from_polar(1.0, phi);
        let ray = |t: f64| ln_integrand(start + dir * t, ln_q, beta_a).exp() * dir;
        let (v, e) = integrate_half_line(ray, kappa, tol)?;
        // the upper ray is traversed inwards
        value += if upper { -v } else { v };
        error_estimate += e;
        angles[i] = phi;
    }
    Ok(ContourIntegral {
        value,
        error_estimate,
        upper_angle: angles[0],
        lower_angle: angles[1],
    })
}

/// `Σ_{n=0}^{N} q^n Γ(1+3n)/(Γ(1+n-β_a) n!^2)`, i.e. `2πi` times the residues at `s = 0..N`.
pub fn positive_residue_sum(q: Complex64, beta_a: f64, n: usize) -> Complex64 {
    let ln_q = q.ln();
    let one = Complex64::new(1.0, 0.0);
    (0..=n)
        .map(|k| {
            let s = Complex64::new(k as f64, 0.0);
            (s * ln_q + ln_gamma(one + s * 3.0) - ln_gamma(one + s - beta_a) - ln_gamma(one + s) * 2.0).exp()
        })
        .sum()
}

/// The continued side, `-Σ c_0 I_x(β) q^{β_x}/Γ(1-<β_a>)` over
/// `β_x = -k/3` for `k = 1..=3n` with `β_x ∉ Z` and `β_x - β_a ∉ Z`.
pub fn negative_residue_sum(q: Complex64, frac_ba: Thirds, n: usize) -> Result<Complex64> {
    let ln_q = q.ln();
    let g = Thirds(frac_ba.frac3());
    let g1 = gamma(Complex64::new(1.0 - g.to_f64(), 0.0));
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..=(3 * n as i64) {
        let bx = Thirds(-k);
        if bx.is_integer() || (bx - g).is_integer() {
            continue;
        }
        let cc = connection_coeffs(bx, g)?;
        sum += cc.c0 * gamma_factor_sub(bx, g)? * (ln_q * bx.to_f64()).exp();
    }
    Ok(-sum / g1)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MellinBarnes {
    pub quadrature: Complex64,
    pub partial_sum: Complex64,
    pub error_estimate: f64,
}

impl MellinBarnes {
    pub fn discrepancy(&self) -> f64 {
        (self.quadrature - self.partial_sum).norm()
    }
}

fn check_region(q: Complex64) -> Result<()> {
    if q.norm() == 0.0 {
        return Err(GlsmError::ZeroQ("q"));
    }
    if q.im == 0.0 && q.re < 0.0 {
        return Err(GlsmError::OutOfRegion(format!(
            "q = {q} lies on the negative real axis"
        )));
    }
    Ok(())
}

/// Quadrature value against the partial sum over `s = 0..=N` of the residue
/// series. Only meaningful inside the disc `|q| < 1/27`.
pub fn mellin_barnes_oracle(q: Complex64, frac_ba: Thirds, n: usize, tol: f64) -> Result<MellinBarnes> {
    check_region(q)?;
    if q.norm() >= RADIUS {
        return Err(GlsmError::OutOfRegion(format!("|q| = {} is not below 1/27", q.norm())));
    }
    let ba = Thirds(frac_ba.frac3()).to_f64();
    let ci = contour_integral(q, ba, tol)?;
    Ok(MellinBarnes {
        quadrature: ci.value,
        partial_sum: positive_residue_sum(q, ba, n),
        error_estimate: ci.error_estimate,
    })
}

/// Quadrature value against the continued series (`n` blocks of three
/// fractional degrees), valid for `|q| > 1/27`.
pub fn mellin_barnes_continued(q: Complex64, frac_ba: Thirds, n: usize, tol: f64) -> Result<MellinBarnes> {
    check_region(q)?;
    if q.norm() <= RADIUS {
        return Err(GlsmError::OutOfRegion(format!("|q| = {} is not above 1/27", q.norm())));
    }
    let ci = contour_integral(q, Thirds(frac_ba.frac3()).to_f64(), tol)?;
    Ok(MellinBarnes {
        quadrature: ci.value,
        partial_sum: negative_residue_sum(q, frac_ba, n)?,
        error_estimate: ci.error_estimate,
    })
}
