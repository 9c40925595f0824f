//! Analytic continuation of I-series across a single wall and the induced
//! linear map between state spaces.
//!
//! Moving a superscript variable `v` to the subscript side replaces the sum
//! over `β_v ∈ Z_{≥0}` by a sum over `β_v ∈ (1/3)Z_{<0}` with `β_v ∉ Z` and
//! `β_v - β_a ∉ Z`. Each new term carries `c_0 + c_1 H_v/ℏ` on the sector
//! with `v`-twist removed, which the state-space isomorphism then carries to
//! `ℋ(θ')`.

pub mod mellin_barnes;
pub mod quadrature;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::coh_ring::{reduce_to_state, AmbientClass, NilPoly, SectorLabel, StateClass};
use crate::degrees::{enumerate_ifunction_degrees, Degree};
use crate::error::{GlsmError, Result};
use crate::gamma_kit::{a_factor, gamma, gamma_factor_sub, h_constant, variable_factor};
use crate::i_series::{attach_log_factors, build_givental, ISeries, LogPoly, SeriesKind};
use crate::model::{Chamber, Var};
use crate::state_space::{iso_permutation, state_basis, state_iso, BasisElement};
use crate::thirds::Thirds;

/// Orientation of the contour: the sum over the right-hand poles equals
/// minus the sum over the left-hand residues.
pub const CONTINUATION_SIGN: f64 = -1.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConnectionCoeffs {
    pub frac_bx: Thirds,
    pub frac_ba: Thirds,
    pub c0: Complex64,
    pub c1: Complex64,
}

/// `c_0` and `c_1` for the fractional parts of `β_x` and `β_a` (any
/// representatives are accepted).
pub fn connection_coeffs(frac_bx: Thirds, frac_ba: Thirds) -> Result<ConnectionCoeffs> {
    let f = Thirds(frac_bx.frac3());
    let g = Thirds(frac_ba.frac3());
    if f.0 == 0 || f == g {
        return Err(GlsmError::VanishingTerm);
    }
    let re = |x: f64| Complex64::new(x, 0.0);
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let e = (two_pi_i * f.to_f64()).exp();
    let gf = gamma(re(f.to_f64()));
    let pre = -two_pi_i / (gamma(re(Thirds((f - g).frac3()).to_f64())) * gf * gf * 3.0);
    let g1 = gamma(re(1.0 - g.to_f64()));
    let c0 = pre * g1 / (e - 1.0);
    let c1 = pre * (two_pi_i * e * g1 / ((e - 1.0) * (e - 1.0)) + g1 * h_constant(g) / (e - 1.0));
    Ok(ConnectionCoeffs {
        frac_bx: f,
        frac_ba: g,
        c0,
        c1,
    })
}

fn single_move(theta: &Chamber, v: Var) -> Result<Chamber> {
    if !theta.is_superscript(v) {
        return Err(GlsmError::Precondition(format!(
            "{v} is not a superscript variable of {theta}"
        )));
    }
    Ok(theta.with_moved(v))
}

/// Continued coefficient of the `θ'`-degree `β`, in `θ'` coordinates.
fn continued_term(theta: &Chamber, v: Var, beta: &Degree, hbar: Complex64) -> Result<LogPoly<Complex64>> {
    let theta2 = theta.with_moved(v);
    let (bv, ba) = (beta.get(v), beta.a());
    let cc = connection_coeffs(bv, ba)?;
    let mut p = NilPoly::constant(a_factor(ba, hbar) * gamma_factor_sub(bv, ba)? * hbar.powi(ba.floor() as i32));
    for w in Var::ALL.into_iter().filter(|&w| w != v) {
        p = &p * &variable_factor(beta, theta, w, hbar)?;
    }
    let slot = &NilPoly::constant(cc.c0) + &NilPoly::generator(v).scale(&(cc.c1 / hbar));
    p = (&p * &slot).scale(&Complex64::new(CONTINUATION_SIGN, 0.0));
    let class = AmbientClass::single(SectorLabel::of_neg(beta).with(v, 0), p);
    let mut out = LogPoly::default();
    for (l, c) in attach_log_factors(&class, &theta2, &hbar).terms {
        let s = state_iso(theta, &theta2, &reduce_to_state(&c, theta)?)?;
        out.add(l, s.to_ambient());
    }
    Ok(out)
}

/// Analytic continuation of a Givental series in the superscript variable
/// `v`. The output lives in the chamber with `v` moved, keyed by degree, and
/// omits the degrees with `β_v - β_a ∈ Z` whose residues vanish.
pub fn continue_series(series: &ISeries<Complex64>, v: Var) -> Result<ISeries<Complex64>> {
    if series.kind != SeriesKind::Givental {
        return Err(GlsmError::Precondition("continuation needs a Givental series".into()));
    }
    let theta = series.chamber;
    let theta2 = single_move(&theta, v)?;
    let hbar = series.hbar;
    let terms = enumerate_ifunction_degrees(&theta2, series.cutoff)
        .into_par_iter()
        .filter(|b| !(b.get(v) - b.a()).is_integer())
        .map(|b| Ok((b, continued_term(&theta, v, &b, hbar)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ISeries {
        chamber: theta2,
        hbar,
        cutoff: series.cutoff,
        kind: SeriesKind::Givental,
        shift: Degree::default(),
        terms: terms.into_iter().collect(),
    })
}

/// Column of the connection matrix for the `θ'` basis element `e`: the
/// continued image of a term whose direct coefficient is `e`.
fn slot_column(theta: &Chamber, v: Var, e: &BasisElement, hbar: Complex64) -> Result<StateClass<Complex64>> {
    let theta2 = theta.with_moved(v);
    let f = Thirds((3 - e.sector.m(v) as i64) % 3);
    let g = Thirds((3 - e.sector.m_a() as i64) % 3);
    let cc = connection_coeffs(f, g)?;
    let pow = 2 + if f.0 < g.0 { -1 } else { 0 } - f.0;
    let scale = hbar.powi(pow as i32) * CONTINUATION_SIGN;
    let mut p = NilPoly::monomial(e.monomial, cc.c0 * scale);
    p.set_coeff(e.monomial.with(v), cc.c1 / hbar * scale);
    let class = AmbientClass::single(e.sector.with(v, 0), p);
    state_iso(theta, &theta2, &reduce_to_state(&class, theta)?)
}

/// The matrix `K` on `ℋ(θ')` sending the direct coefficient of each term to
/// its continued coefficient (after the state isomorphism).
pub fn connection_matrix(theta: &Chamber, v: Var, hbar: Complex64) -> Result<DMatrix<Complex64>> {
    let theta2 = single_move(theta, v)?;
    let basis = state_basis(&theta2);
    let mut k = DMatrix::zeros(10, 10);
    for (j, e) in basis.elements.iter().enumerate() {
        let col = slot_column(theta, v, e, hbar)?;
        for (i, a) in col.coeffs.iter().enumerate() {
            k[(i, j)] = *a;
        }
    }
    Ok(k)
}

fn permutation_matrix(theta: &Chamber, theta2: &Chamber) -> DMatrix<Complex64> {
    let mut p = DMatrix::zeros(10, 10);
    for (i, j) in iso_permutation(theta, theta2).into_iter().enumerate() {
        p[(j, i)] = Complex64::new(1.0, 0.0);
    }
    p
}

pub fn condition_number(m: &DMatrix<Complex64>) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

fn invert(m: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    m.clone()
        .try_inverse()
        .ok_or_else(|| GlsmError::Precondition("singular connection matrix".into()))
}

/// The LG/CY map `ℋ(θ) → ℋ(θ')` in the ordered bases, evaluated at `ℏ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LgcyMatrix {
    pub from: Chamber,
    pub to: Chamber,
    pub hbar: Complex64,
    pub cutoff: i64,
    pub matrix: DMatrix<Complex64>,
    pub condition_number: f64,
}

impl LgcyMatrix {
    fn new(from: Chamber, to: Chamber, hbar: Complex64, cutoff: i64, matrix: DMatrix<Complex64>) -> Self {
        let condition_number = condition_number(&matrix);
        LgcyMatrix {
            from: from.canonical(),
            to: to.canonical(),
            hbar,
            cutoff,
            matrix,
            condition_number,
        }
    }

    pub fn apply(&self, c: &StateClass<Complex64>) -> Result<StateClass<Complex64>> {
        if c.chamber.pattern_index() != self.from.pattern_index() {
            return Err(GlsmError::Precondition(format!(
                "a class of {}, got one of {}",
                self.from, c.chamber
            )));
        }
        let x = &self.matrix * nalgebra::DVector::from_vec(c.coeffs.clone());
        Ok(StateClass {
            chamber: self.to,
            coeffs: x.iter().cloned().collect(),
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LgcyMatrix) -> Result<LgcyMatrix> {
        if other.from != self.to {
            return Err(GlsmError::Precondition(format!(
                "cannot compose {} after {}",
                other.from, self.to
            )));
        }
        Ok(Self::new(
            self.from,
            other.to,
            self.hbar,
            self.cutoff,
            &other.matrix * &self.matrix,
        ))
    }

    pub fn inverse(&self) -> Result<LgcyMatrix> {
        Ok(Self::new(
            self.to,
            self.from,
            self.hbar,
            self.cutoff,
            invert(&self.matrix)?,
        ))
    }

    pub fn is_invertible(&self) -> bool {
        self.condition_number.is_finite() && self.condition_number < 1e12
    }

    /// Largest entry joining basis elements of different shifted degree,
    /// relative to the largest entry.
    pub fn off_block_ratio(&self) -> f64 {
        let (ds, dt) = (state_basis(&self.from).degrees(), state_basis(&self.to).degrees());
        let scale = self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let mut worst: f64 = 0.0;
        for i in 0..10 {
            for j in 0..10 {
                if dt[i] != ds[j] {
                    worst = worst.max(self.matrix[(i, j)].norm());
                }
            }
        }
        worst / scale
    }

    pub fn is_block_diagonal(&self, tol: f64) -> bool {
        self.off_block_ratio() <= tol
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..10)
            .map(|i| (0..10).map(|j| self.matrix[(i, j)]).collect())
            .collect()
    }
}

/// Row/column degree exponent of `ℏ`-homogeneity: entry `(i, j)` scales as
/// `ℏ^{(deg_j - deg_i)/2}`.
pub fn hbar_exponents(from: &Chamber, to: &Chamber) -> DMatrix<i32> {
    let (ds, dt) = (state_basis(from).degrees(), state_basis(to).degrees());
    DMatrix::from_fn(10, 10, |i, j| ((ds[j] - dt[i]) / 2) as i32)
}

/// Maximum deviation of `Λ(ℏ_2)` from `Λ(ℏ_1)` rescaled entrywise by
/// `(ℏ_2/ℏ_1)^{(deg_j - deg_i)/2}`, relative to the largest entry.
pub fn grading_defect(a: &LgcyMatrix, b: &LgcyMatrix) -> f64 {
    let e = hbar_exponents(&a.from, &a.to);
    let ratio = b.hbar / a.hbar;
    let scale = b.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        for j in 0..10 {
            let expect = a.matrix[(i, j)] * ratio.powi(e[(i, j)]);
            worst = worst.max((b.matrix[(i, j)] - expect).norm());
        }
    }
    worst / scale
}

pub fn extract_lgcy_matrix(theta: &Chamber, theta2: &Chamber, cutoff: i64, hbar: Complex64) -> Result<LgcyMatrix> {
    if hbar.norm() == 0.0 {
        return Err(GlsmError::ZeroHbar);
    }
    let moves = theta.differing_vars(theta2);
    match moves.as_slice() {
        [] => Ok(LgcyMatrix::new(
            *theta,
            *theta2,
            hbar,
            cutoff,
            DMatrix::identity(10, 10),
        )),
        [v] if theta.is_superscript(*v) => {
            let k = connection_matrix(theta, *v, hbar)?;
            let m = invert(&k)? * permutation_matrix(theta, theta2);
            Ok(LgcyMatrix::new(*theta, *theta2, hbar, cutoff, m))
        }
        [_] => extract_lgcy_matrix(theta2, theta, cutoff, hbar)?.inverse(),
        _ => Err(GlsmError::NotAdjacent(theta.name(), theta2.name())),
    }
}

/// Composite map along a chain of adjacent chambers.
pub fn chain_matrix(chain: &[Chamber], cutoff: i64, hbar: Complex64) -> Result<LgcyMatrix> {
    let first = chain
        .first()
        .ok_or_else(|| GlsmError::Precondition("empty chain".into()))?;
    let mut acc = extract_lgcy_matrix(first, first, cutoff, hbar)?;
    for w in chain.windows(2) {
        acc = acc.then(&extract_lgcy_matrix(&w[0], &w[1], cutoff, hbar)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TermMatchRow {
    pub degree: Degree,
    pub lpowers: crate::coh_ring::Monomial,
    pub continued: StateClass<Complex64>,
    pub recovered: StateClass<Complex64>,
    pub direct: StateClass<Complex64>,
    pub rel_err: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TermMatchReport {
    pub from: Chamber,
    pub to: Chamber,
    pub hbar: Complex64,
    pub cutoff: i64,
    pub rows: Vec<TermMatchRow>,
    pub max_rel_err: f64,
    pub continued_terms: usize,
    pub direct_terms: usize,
    /// Direct degrees with `β_v - β_a ∈ Z`, absent from the continuation.
    pub excluded_terms: usize,
    /// Excluded direct degrees whose state-space coefficient is nonzero.
    pub excluded_nonzero: usize,
}

fn norm(c: &StateClass<Complex64>) -> f64 {
    c.coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn relative_error(a: &StateClass<Complex64>, b: &StateClass<Complex64>) -> f64 {
    let d = norm(&a.add(&b.scale(&Complex64::new(-1.0, 0.0))));
    let n = norm(b);
    if n == 0.0 {
        if d == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        d / n
    }
}

/// Compares the continuation of `I^θ` in `v` with the direct Givental
/// series of `θ'`, term by term: `K^{-1}` applied to each continued
/// coefficient must reproduce the direct coefficient.
pub fn term_match(theta: &Chamber, v: Var, cutoff: i64, hbar: Complex64) -> Result<TermMatchReport> {
    let theta2 = single_move(theta, v)?;
    let source = build_givental::<Complex64>(theta, &hbar, cutoff)?;
    let continued = continue_series(&source, v)?;
    let direct = build_givental::<Complex64>(&theta2, &hbar, cutoff)?;
    let k_inv = invert(&connection_matrix(theta, v, hbar)?)?;
    let empty = LogPoly::default();
    let mut rows = Vec::new();
    for (beta, p) in &continued.terms {
        let q = direct.term_for_degree(beta).unwrap_or(&empty);
        let mut keys: Vec<_> = p.terms.keys().chain(q.terms.keys()).cloned().collect();
        keys.sort();
        keys.dedup();
        for l in keys {
            let c = reduce_to_state(&p.terms.get(&l).cloned().unwrap_or_default(), &theta2)?;
            let d = reduce_to_state(&q.terms.get(&l).cloned().unwrap_or_default(), &theta2)?;
            let x = &k_inv * nalgebra::DVector::from_vec(c.coeffs.clone());
            let recovered = StateClass {
                chamber: theta2.canonical(),
                coeffs: x.iter().cloned().collect(),
            };
            let rel_err = relative_error(&recovered, &d);
            rows.push(TermMatchRow {
                degree: *beta,
                lpowers: l,
                continued: c,
                recovered,
                direct: d,
                rel_err,
            });
        }
    }
    let mut excluded_terms = 0;
    let mut excluded_nonzero = 0;
    for (beta, q) in &direct.terms {
        if (beta.get(v) - beta.a()).is_integer() {
            excluded_terms += 1;
            for c in q.terms.values() {
                if !reduce_to_state(c, &theta2)?.is_zero() {
                    excluded_nonzero += 1;
                }
            }
        }
    }
    let max_rel_err = rows.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    Ok(TermMatchReport {
        from: theta.canonical(),
        to: theta2.canonical(),
        hbar,
        cutoff,
        rows,
        max_rel_err,
        continued_terms: continued.len(),
        direct_terms: direct.len(),
        excluded_terms,
        excluded_nonzero,
    })
}
