//! Truncated I-series and their Givental form.
//!
//! The plain series `I^θ = Σ_β q^{β-β_0(θ,1)} I_β` is keyed by the shifted
//! exponent. The Givental series `Σ_β q^{β+H/ℏ} (-1)^{3β_x+3β_y+3β_z} I_β`
//! is keyed by `β` itself, with `q_v^{H_v/ℏ} = 1 + (L_v/ℏ) H_v` expanded
//! exactly for superscript `v`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::coh_ring::{reduce_to_state, AmbientClass, Monomial, NilPoly, Scalar, StateClass};
use crate::degrees::{beta_theta, enumerate_ifunction_degrees, extremal_degree, Degree};
use crate::error::{GlsmError, Result};
use crate::model::{Chamber, Var};
use crate::orbi_bundle::i_coefficient;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    Plain,
    Givental,
}

impl SeriesKind {
    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::Plain => "plain",
            SeriesKind::Givental => "givental",
        }
    }
}

/// Polynomial of degree at most one in each of `L_x, L_y, L_z`; the key
/// records which `L_v` occur (reusing the squarefree [`Monomial`] mask).
#[derive(Clone, Debug, PartialEq)]
pub struct LogPoly<C> {
    pub terms: BTreeMap<Monomial, AmbientClass<C>>,
}

impl<C: Scalar> Default for LogPoly<C> {
    fn default() -> Self {
        LogPoly { terms: BTreeMap::new() }
    }
}

impl<C: Scalar> LogPoly<C> {
    pub fn constant(c: AmbientClass<C>) -> Self {
        let mut p = Self::default();
        p.add(Monomial::ONE, c);
        p
    }

    pub fn add(&mut self, l: Monomial, c: AmbientClass<C>) {
        let sum = match self.terms.remove(&l) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(l, sum);
        }
    }

    /// The `L`-free part.
    pub fn constant_part(&self) -> AmbientClass<C> {
        self.terms.get(&Monomial::ONE).cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|l| l.is_one())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ISeries<C> {
    pub chamber: Chamber,
    pub hbar: C,
    pub cutoff: i64,
    pub kind: SeriesKind,
    /// Exponents are `β - shift`.
    pub shift: Degree,
    pub terms: BTreeMap<Degree, LogPoly<C>>,
}

impl<C: Scalar> ISeries<C> {
    pub fn degree_of(&self, exponent: &Degree) -> Degree {
        exponent.add(&self.shift)
    }

    pub fn exponent_of(&self, beta: &Degree) -> Degree {
        beta.sub(&self.shift)
    }

    /// Coefficient of the extremal degree `β_0(θ,1)`.
    pub fn leading_term(&self) -> Option<&LogPoly<C>> {
        self.terms.get(&self.exponent_of(&extremal_degree(&self.chamber, 1)))
    }

    pub fn term_for_degree(&self, beta: &Degree) -> Option<&LogPoly<C>> {
        self.terms.get(&self.exponent_of(beta))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms ordered by `β_ϑ` and then by degree.
    pub fn ordered_terms(&self) -> Vec<(Degree, &LogPoly<C>)> {
        let mut v: Vec<(Degree, &LogPoly<C>)> = self.terms.iter().map(|(e, p)| (*e, p)).collect();
        v.sort_by_key(|(e, _)| (beta_theta(&self.degree_of(e), 1, &self.chamber), *e));
        v
    }
}

/// `(-1)^{3β_x+3β_y+3β_z}`.
pub fn givental_sign(beta: &Degree) -> i64 {
    if (beta.0[0].0 + beta.0[1].0 + beta.0[2].0).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn build_i_series<C: Scalar>(theta: &Chamber, hbar: &C, cutoff: i64) -> Result<ISeries<C>> {
    if hbar.is_zero() {
        return Err(GlsmError::ZeroHbar);
    }
    let shift = extremal_degree(theta, 1);
    let terms = enumerate_ifunction_degrees(theta, cutoff)
        .par_iter()
        .map(|beta| Ok((beta.sub(&shift), LogPoly::constant(i_coefficient(beta, theta, hbar)?))))
        .collect::<Result<Vec<_>>>()?;
    Ok(ISeries {
        chamber: *theta,
        hbar: hbar.clone(),
        cutoff,
        kind: SeriesKind::Plain,
        shift,
        terms: terms.into_iter().collect(),
    })
}

/// Multiplies a coefficient by `Π_{v superscript} (1 + (L_v/ℏ) H_v)`.
pub fn attach_log_factors<C: Scalar>(c: &AmbientClass<C>, theta: &Chamber, hbar: &C) -> LogPoly<C> {
    let sup = Monomial::from_vars(&theta.superscript_vars());
    let inv = C::one() / hbar.clone();
    let mut out = LogPoly::default();
    for l in Monomial::all().filter(|l| l.0 & !sup.0 == 0) {
        let mut f = NilPoly::one();
        for v in l.vars() {
            f = &f * &NilPoly::generator(v).scale(&inv);
        }
        out.add(l, c.mul_poly(&f));
    }
    out
}

pub fn build_givental<C: Scalar>(theta: &Chamber, hbar: &C, cutoff: i64) -> Result<ISeries<C>> {
    if hbar.is_zero() {
        return Err(GlsmError::ZeroHbar);
    }
    let terms = enumerate_ifunction_degrees(theta, cutoff)
        .par_iter()
        .map(|beta| {
            let c = i_coefficient(beta, theta, hbar)?.scale(&C::from_i64(givental_sign(beta)));
            Ok((*beta, attach_log_factors(&c, theta, hbar)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ISeries {
        chamber: *theta,
        hbar: hbar.clone(),
        cutoff,
        kind: SeriesKind::Givental,
        shift: Degree::default(),
        terms: terms.into_iter().collect(),
    })
}

const Q_NAMES: [&str; 4] = ["q_x", "q_y", "q_z", "q_a"];

/// Sums the series at `q` (principal branch for fractional powers and
/// logarithms) and reduces to the state space.
pub fn evaluate<C: Scalar>(series: &ISeries<C>, q: [Complex64; 4]) -> Result<StateClass<Complex64>> {
    for (i, z) in q.iter().enumerate() {
        if z.norm() == 0.0 {
            return Err(GlsmError::ZeroQ(Q_NAMES[i]));
        }
        if z.im == 0.0 && z.re < 0.0 {
            return Err(GlsmError::BranchAmbiguity(Q_NAMES[i]));
        }
    }
    let logs = q.map(|z| z.ln());
    let theta = series.chamber;
    let mut out = StateClass::zero(theta.canonical());
    for (e, p) in &series.terms {
        let weight: Complex64 = (0..4).map(|i| (logs[i] * e.0[i].to_f64()).exp()).product();
        for (l, class) in &p.terms {
            let lw: Complex64 = l.vars().iter().map(|v: &Var| logs[v.index()]).product();
            let s = reduce_to_state(&class.to_complex(), &theta)?;
            out = out.add(&s.scale(&(weight * lw)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coh_ring::SectorLabel;
    use crate::state_space::unit_class;
    use crate::thirds::Thirds;
    use num_rational::BigRational;
    use num_traits::One;

    fn ch(s: &str) -> Chamber {
        Chamber::parse(s).unwrap()
    }

    #[test]
    fn single_term_series() {
        let t = ch("++-+");
        let s = build_i_series(&t, &BigRational::one(), 0).unwrap();
        assert_eq!(s.len(), 1);
        let lead = s.leading_term().unwrap().constant_part();
        assert_eq!(reduce_to_state(&lead, &t).unwrap(), unit_class(&t));
        assert_eq!(s.terms.keys().next(), Some(&Degree::default()));
    }

    #[test]
    fn geometric_cutoff_one() {
        let s = build_i_series(&Chamber::GEOMETRIC, &BigRational::one(), 1).unwrap();
        let c = s.term_for_degree(&Degree::thirds(0, 0, 0, 1)).unwrap().constant_part();
        assert_eq!(c, AmbientClass::single(SectorLabel([0, 0, 0, 2]), NilPoly::one()));
    }

    #[test]
    fn intro_shape() {
        let t = ch("++-+");
        let s = build_i_series(&t, &BigRational::one(), 4).unwrap();
        for e in s.terms.keys() {
            assert!(e.0[0].is_integer() && e.0[1].is_integer());
            // a power series in q_z^{-1}
            assert!(e.0[2].0 <= 0 && e.0[3].0 >= 0);
            assert_eq!(s.degree_of(e).0[2], e.0[2] - Thirds(1));
        }
    }

    #[test]
    fn givental_log_factors() {
        let g = Chamber::GEOMETRIC;
        let s = build_givental(&g, &BigRational::one(), 3).unwrap();
        let p = s.term_for_degree(&Degree::thirds(3, 0, 0, 0)).unwrap();
        assert_eq!(p.terms.len(), 8);
        let plain = build_i_series(&g, &BigRational::one(), 3).unwrap();
        let c = plain
            .term_for_degree(&Degree::thirds(3, 0, 0, 0))
            .unwrap()
            .constant_part();
        assert_eq!(p.constant_part(), c.scale(&BigRational::from_integer((-1).into())));
    }

    #[test]
    fn evaluate_single_term_and_errors() {
        let t = ch("++-+");
        let s = build_i_series(&t, &BigRational::one(), 0).unwrap();
        let q = [
            Complex64::new(0.3, 0.1),
            Complex64::new(2.0, 0.0),
            Complex64::new(0.5, -1.0),
            Complex64::new(0.01, 0.0),
        ];
        assert_eq!(evaluate(&s, q).unwrap(), unit_class::<BigRational>(&t).to_complex());
        let mut bad = q;
        bad[1] = Complex64::new(0.0, 0.0);
        assert_eq!(evaluate(&s, bad), Err(GlsmError::ZeroQ("q_y")));
        bad[1] = Complex64::new(-1.0, 0.0);
        assert_eq!(evaluate(&s, bad), Err(GlsmError::BranchAmbiguity("q_y")));
    }
}
