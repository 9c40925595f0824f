//! Extended Γ on first-order dual numbers, the digamma constants `𝔥` and the
//! Γ-ratio forms of the I-function factors.
//!
//! For a superscript variable the Givental factor of degree `β` is
//!
//! ```text
//! Γ(1+3h+3β_v)   Γ(1+h)²      Γ(1+h-<β_a>)
//! ------------ · ----------- · ----------------   h = H_v/ℏ
//!   Γ(1+3h)      Γ(1+h+β_v)²  Γ(1+h+β_v-β_a)
//! ```
//!
//! times `ℏ^{⌊β_a⌋}`. For a subscript variable it is the scalar
//!
//! ```text
//! (-1)^{3β_v} Γ(<β_v-β_a>)/Γ(β_v-β_a+1) · (Γ(<β_v>)/Γ(β_v+1))² / Γ(-3β_v)
//! ```
//!
//! times `ℏ^{3β_v - 2⌊β_v⌋ - ⌊β_v-β_a⌋ - 2}`, and the `a` factor is
//! `ℏ^{-3β_a}/Γ(1+3β_a)`.

pub mod special;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::coh_ring::{AmbientClass, DualNum, NilPoly, SectorLabel};
use crate::degrees::Degree;
use crate::error::{GlsmError, Result};
use crate::model::{Chamber, Var};
use crate::thirds::Thirds;

pub use special::{digamma, gamma, is_pole, ln_gamma, rgamma, EULER_GAMMA};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `Γ(s + bε) = Γ(s) + Γ(s)ψ(s) b ε`.
pub fn gamma_dual(s: Complex64, b: Complex64) -> Result<DualNum> {
    if is_pole(s) {
        return Err(GlsmError::PoleArgument(s.to_string()));
    }
    let g = gamma(s);
    Ok(DualNum::new(g, g * digamma(s) * b))
}

/// `1/Γ(s + bε)`, defined everywhere. At `s = -k` the value is `0` and the
/// derivative is `(-1)^k k!`.
pub fn rgamma_dual(s: Complex64, b: Complex64) -> DualNum {
    if is_pole(s) {
        let k = -s.re as u32;
        let fact: f64 = (1..=k).map(f64::from).product();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        return DualNum::new(c(0.0), b * (sign * fact));
    }
    let r = rgamma(s);
    DualNum::new(r, -r * digamma(s) * b)
}

/// `Γ(p)/Γ(q)` for `p, q ∈ (1/3)Z`, taking the limit when both are poles.
pub fn gamma_quotient(p: Thirds, q: Thirds) -> Result<Complex64> {
    let pole = |t: Thirds| t.is_integer() && t <= Thirds::ZERO;
    match (pole(p), pole(q)) {
        (true, true) => {
            // Γ(-a+ε)/Γ(-b+ε) → (-1)^{a-b} b!/a!
            let (a, b) = (-p.floor(), -q.floor());
            let fact = |n: i64| (1..=n).map(|k| k as f64).product::<f64>();
            let sign = if (a - b).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            Ok(c(sign * fact(b) / fact(a)))
        }
        (true, false) => Err(GlsmError::PoleArgument(p.to_string())),
        (false, _) => Ok(gamma(c(p.to_f64())) * rgamma(c(q.to_f64()))),
    }
}

/// `𝔥_{-f} = ψ(1-f) - ψ(1)` in closed form (Gauss digamma theorem).
pub fn h_constant(frac_a: Thirds) -> f64 {
    let r = PI / (2.0 * 3f64.sqrt());
    let l = 1.5 * 3f64.ln();
    match frac_a.frac3() {
        0 => 0.0,
        1 => r - l,
        _ => -r - l,
    }
}

/// `ψ(1-f) - ψ(1)` evaluated numerically.
pub fn h_constant_numeric(frac_a: Thirds) -> f64 {
    let f = Thirds(frac_a.frac3()).to_f64();
    (digamma(c(1.0 - f)) - digamma(c(1.0))).re
}

fn gd(t: Thirds, b: Complex64) -> Result<DualNum> {
    gamma_dual(c(t.to_f64()), b)
}

fn rgd(t: Thirds, b: Complex64) -> DualNum {
    rgamma_dual(c(t.to_f64()), b)
}

/// Γ-ratio factor of a superscript variable as a dual number in `h`, where
/// `slot` is the coefficient of the dual unit (`1/ℏ` when the unit is `H_v`).
pub fn gamma_factor_super(beta_v: i64, beta_a: Thirds, slot: Complex64) -> Result<DualNum> {
    if beta_v < 0 {
        return Err(GlsmError::Precondition(format!("beta_v >= 0, got {beta_v}")));
    }
    let one = Thirds::int(1);
    let bv = Thirds::int(beta_v);
    let frac_a = Thirds(beta_a.frac3());
    let three = slot * 3.0;
    let mut out = gd(one + bv * 3, three)? * rgd(one, three);
    let g1 = gd(one, slot)?;
    let r1 = rgd(one + bv, slot);
    out = out * g1 * g1 * r1 * r1;
    out = out * gd(one - frac_a, slot)? * rgd(one + bv - beta_a, slot);
    Ok(out)
}

fn subscript_factor(beta_v: Thirds, beta_a: Thirds) -> Result<Complex64> {
    let one = Thirds::int(1);
    let b0 = beta_v - beta_a;
    let sign = if beta_v.0.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let r0 = gamma_quotient(Thirds(b0.frac3()), b0 + one)?;
    let r1 = gamma_quotient(Thirds(beta_v.frac3()), beta_v + one)?;
    Ok(r0 * r1 * r1 * rgamma(c((-beta_v * 3).to_f64())) * sign)
}

/// Γ-ratio factor of a subscript variable; requires `β_v ∉ Z` and `β_v - β_a ∉ Z`.
pub fn gamma_factor_sub(beta_v: Thirds, beta_a: Thirds) -> Result<Complex64> {
    if beta_v.is_integer() || beta_v >= Thirds::ZERO {
        return Err(GlsmError::PoleArgument(format!("beta_v = {beta_v}")));
    }
    if (beta_v - beta_a).is_integer() {
        return Err(GlsmError::PoleArgument(format!(
            "beta_v - beta_a = {}",
            beta_v - beta_a
        )));
    }
    subscript_factor(beta_v, beta_a)
}

/// Power of `ℏ` accompanying the subscript factor.
pub fn hbar_power_sub(beta_v: Thirds, beta_a: Thirds) -> i64 {
    beta_v.0 - 2 * beta_v.floor() - (beta_v - beta_a).floor() - 2
}

/// Power of `ℏ` accompanying the superscript factor.
pub fn hbar_power_super(beta_a: Thirds) -> i64 {
    beta_a.floor()
}

/// The `a` factor `ℏ^{-3β_a}/Γ(1+3β_a)`.
pub fn a_factor(beta_a: Thirds, hbar: Complex64) -> Complex64 {
    hbar.powi(-beta_a.0 as i32) * rgamma(c((Thirds::int(1) + beta_a * 3).to_f64()))
}

/// Γ-ratio factor of variable `v` with its power of `ℏ`, as a polynomial in `H_v`.
pub fn variable_factor(beta: &Degree, theta: &Chamber, v: Var, hbar: Complex64) -> Result<NilPoly<Complex64>> {
    let (bv, ba) = (beta.get(v), beta.a());
    if theta.is_superscript(v) {
        let d = gamma_factor_super(bv.floor(), ba, hbar.inv())?;
        Ok(d.scale(hbar.powi(hbar_power_super(ba) as i32)).to_nilpoly(v))
    } else {
        Ok(NilPoly::constant(
            subscript_factor(bv, ba)? * hbar.powi(hbar_power_sub(bv, ba) as i32),
        ))
    }
}

/// The Givental coefficient of degree `β` (without the `q^{H/ℏ}` factor)
/// assembled from Γ-ratio factors. Broad subscript factors are evaluated as
/// limits of the Γ quotients.
pub fn givental_gamma_coefficient(beta: &Degree, theta: &Chamber, hbar: Complex64) -> Result<AmbientClass<Complex64>> {
    if hbar == c(0.0) {
        return Err(GlsmError::ZeroHbar);
    }
    let mut p = NilPoly::constant(a_factor(beta.a(), hbar));
    for v in Var::ALL {
        p = &p * &variable_factor(beta, theta, v, hbar)?;
    }
    Ok(AmbientClass::single(SectorLabel::of_neg(beta), p))
}
