//! Line bundles on the football `P(3,1)` and the Euler-class products that
//! make up the I-function coefficients.

use crate::coh_ring::{AmbientClass, NilPoly, Scalar, SectorLabel};
use crate::degrees::{beta_rho, Degree};
use crate::error::{GlsmError, Result};
use crate::model::{toric_divisor, Chamber, Coord, Var};
use crate::thirds::Thirds;

/// `O(3b)` on `P(3,1)`, of degree `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbiLineBundle {
    pub degree: Thirds,
}

impl OrbiLineBundle {
    /// Monodromy at the orbifold point, the fractional part of the degree.
    pub fn monodromy_at_infinity(&self) -> Thirds {
        Thirds(self.degree.frac3())
    }

    pub fn h0(&self) -> u64 {
        h0_dim(self.degree)
    }

    pub fn h1(&self) -> u64 {
        h1_dim(self.degree)
    }
}

pub fn h0_dim(b: Thirds) -> u64 {
    if b >= Thirds::ZERO {
        (b.floor() + 1) as u64
    } else {
        0
    }
}

pub fn h1_dim(b: Thirds) -> u64 {
    if b >= Thirds::int(-1) {
        0
    } else {
        (-b.floor() - 1) as u64
    }
}

/// `Π_{ν=0}^{⌈b⌉-1} (D + (b-ν)ℏ)`, empty for `b ≤ 0`.
pub fn euler_denominator_factor<C: Scalar>(b: Thirds, d: &NilPoly<C>, hbar: &C) -> NilPoly<C> {
    let mut out = NilPoly::one();
    for nu in 0..b.ceil() {
        let shift = C::from_thirds(b - Thirds::int(nu)) * hbar.clone();
        out = &out * &(d + &NilPoly::constant(shift));
    }
    out
}

/// `Π_{ν=⌊b⌋+1}^{-1} (D + (b-ν)ℏ)`, empty for `b ≥ -1`.
pub fn euler_numerator_factor<C: Scalar>(b: Thirds, d: &NilPoly<C>, hbar: &C) -> NilPoly<C> {
    let mut out = NilPoly::one();
    for nu in (b.floor() + 1)..=-1 {
        let shift = C::from_thirds(b - Thirds::int(nu)) * hbar.clone();
        out = &out * &(d + &NilPoly::constant(shift));
    }
    out
}

/// Whether the extra factor `A_v = H_v` is present: superscript `v` with
/// `0 ≤ β_v < β_a` and `β_v - β_a ∈ Z`.
pub fn a_factor_triggered(beta: &Degree, v: Var, theta: &Chamber) -> bool {
    let (bv, ba) = (beta.get(v), beta.a());
    theta.is_superscript(v) && Thirds::ZERO <= bv && bv < ba && (bv - ba).is_integer()
}

/// Product of the Euler factors of the selected rows, together with the
/// `A_v` factors of the selected variable groups.
pub fn partial_coefficient<C: Scalar>(
    beta: &Degree,
    theta: &Chamber,
    hbar: &C,
    rows: impl Fn(Coord) -> bool,
    groups: &[Var],
) -> Result<NilPoly<C>> {
    if hbar.is_zero() {
        return Err(GlsmError::ZeroHbar);
    }
    let mut num = NilPoly::one();
    let mut den = NilPoly::one();
    for rho in Coord::ALL.into_iter().filter(|&r| rows(r)) {
        let b = beta_rho(rho, beta, 1);
        let d = NilPoly::from_divisor(&toric_divisor(rho, theta));
        if b < Thirds::int(-1) {
            num = &num * &euler_numerator_factor(b, &d, hbar);
        } else if b >= Thirds::ZERO {
            den = &den * &euler_denominator_factor(b, &d, hbar);
        }
    }
    for &v in groups {
        if a_factor_triggered(beta, v, theta) {
            num = &num * &NilPoly::generator(v);
        }
    }
    Ok(&num * &den.inv()?)
}

/// The I-function coefficient of degree `β`, supported on the sector `<-β>`.
pub fn i_coefficient<C: Scalar>(beta: &Degree, theta: &Chamber, hbar: &C) -> Result<AmbientClass<C>> {
    let p = partial_coefficient(beta, theta, hbar, |_| true, &Var::ALL)?;
    Ok(AmbientClass::single(SectorLabel::of_neg(beta), p))
}

/// Exponent `w` with `I_β(λℏ) = λ^{-w} I_β(ℏ)|_{H ↦ H/λ}`: the number of
/// denominator factors minus numerator factors minus `A_v` factors.
pub fn hbar_weight(beta: &Degree, theta: &Chamber) -> i64 {
    let mut w = 0;
    for rho in Coord::ALL {
        let b = beta_rho(rho, beta, 1);
        if b >= Thirds::ZERO {
            w += b.ceil();
        } else if b < Thirds::int(-1) {
            w -= -b.floor() - 1;
        }
    }
    w - Var::ALL.iter().filter(|&&v| a_factor_triggered(beta, v, theta)).count() as i64
}
