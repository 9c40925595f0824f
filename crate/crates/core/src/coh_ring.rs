//! Coefficient arithmetic: the ring Q[H_x,H_y,H_z]/(H_x^2,H_y^2,H_z^2),
//! sector-labelled ambient classes, state-space vectors and first-order dual
//! numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::degrees::Degree;
use crate::error::{GlsmError, Result};
use crate::model::{Chamber, DivisorForm, Var};
use crate::state_space::{classify_sector, state_basis, SectorKind};
use crate::thirds::Thirds;

/// Field of coefficients: exact rationals or complex floats.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_ratio(r: &BigRational) -> Self;
    fn to_complex(&self) -> Complex64;

    fn from_i64(n: i64) -> Self {
        Self::from_ratio(&BigRational::from_integer(BigInt::from(n)))
    }

    fn from_thirds(t: Thirds) -> Self {
        Self::from_ratio(&t.to_ratio())
    }
}

impl Scalar for BigRational {
    fn from_ratio(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

impl Scalar for Complex64 {
    fn from_ratio(r: &BigRational) -> Self {
        r.to_complex()
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// A squarefree monomial in `H_x, H_y, H_z`, stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub u8);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(v: Var) -> Monomial {
        Monomial(1 << v.index())
    }

    pub fn from_vars(vars: &[Var]) -> Monomial {
        Monomial(vars.iter().fold(0, |m, v| m | (1 << v.index())))
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & (1 << v.index()) != 0
    }

    pub fn vars(self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.contains(v)).collect()
    }

    /// Number of generators; cohomological degree is twice this.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn without(self, v: Var) -> Monomial {
        Monomial(self.0 & !(1 << v.index()))
    }

    pub fn with(self, v: Var) -> Monomial {
        Monomial(self.0 | (1 << v.index()))
    }

    pub fn all() -> impl Iterator<Item = Monomial> {
        (0..8u8).map(Monomial)
    }

    pub fn permuted(self, perm: [Var; 3]) -> Monomial {
        Monomial::from_vars(&self.vars().iter().map(|v| perm[v.index()]).collect::<Vec<_>>())
    }

    /// Names used in JSON: `["Hx","Hy"]`.
    pub fn json_names(self) -> Vec<String> {
        self.vars().iter().map(|v| format!("H{v}")).collect()
    }

    pub fn parse_json_name(s: &str) -> Result<Var> {
        s.strip_prefix('H')
            .ok_or_else(|| GlsmError::BadJson(format!("monomial factor `{s}`")))
            .and_then(Var::parse)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for v in self.vars() {
            write!(f, "H_{v}")?;
        }
        Ok(())
    }
}

/// Element of `C[H_x,H_y,H_z]/(H_v^2)`, coefficients indexed by monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct NilPoly<C> {
    c: [C; 8],
}

impl<C: Scalar> NilPoly<C> {
    pub fn zero() -> Self {
        NilPoly {
            c: std::array::from_fn(|_| C::zero()),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(a: C) -> Self {
        let mut p = Self::zero();
        p.c[0] = a;
        p
    }

    pub fn generator(v: Var) -> Self {
        Self::monomial(Monomial::var(v), C::one())
    }

    pub fn monomial(m: Monomial, a: C) -> Self {
        let mut p = Self::zero();
        p.c[m.0 as usize] = a;
        p
    }

    pub fn from_divisor(d: &DivisorForm) -> Self {
        let mut p = Self::zero();
        for v in Var::ALL {
            p.c[Monomial::var(v).0 as usize] = C::from_i64(d.coeff(v));
        }
        p
    }

    pub fn coeff(&self, m: Monomial) -> &C {
        &self.c[m.0 as usize]
    }

    pub fn set_coeff(&mut self, m: Monomial, a: C) {
        self.c[m.0 as usize] = a;
    }

    pub fn scalar(&self) -> &C {
        &self.c[0]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &C)> {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| (Monomial(i as u8), a))
    }

    pub fn scale(&self, a: &C) -> Self {
        NilPoly {
            c: std::array::from_fn(|i| self.c[i].clone() * a.clone()),
        }
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> NilPoly<D> {
        NilPoly {
            c: std::array::from_fn(|i| f(&self.c[i])),
        }
    }

    /// Sets every monomial divisible by `H_v` to zero.
    pub fn kill(&self, v: Var) -> Self {
        let mut p = self.clone();
        for m in Monomial::all().filter(|m| m.contains(v)) {
            p.c[m.0 as usize] = C::zero();
        }
        p
    }

    /// Substitutes `H_v -> t * H_v` for each variable.
    pub fn rescale_generators(&self, t: &C) -> Self {
        NilPoly {
            c: std::array::from_fn(|i| {
                let mut a = self.c[i].clone();
                for _ in 0..(i as u8).count_ones() {
                    a = a * t.clone();
                }
                a
            }),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        nil_inv(self)
    }

    pub fn to_complex(&self) -> NilPoly<Complex64> {
        self.map(|a| a.to_complex())
    }
}

pub fn nil_mul<C: Scalar>(u: &NilPoly<C>, v: &NilPoly<C>) -> NilPoly<C> {
    let mut out = NilPoly::<C>::zero();
    for (i, a) in u.c.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in v.c.iter().enumerate() {
            if i & j != 0 || b.is_zero() {
                continue;
            }
            let k = i | j;
            out.c[k] = out.c[k].clone() + a.clone() * b.clone();
        }
    }
    out
}

/// Inverse via `c^{-1}(1 - n + n^2 - n^3)` where `u = c(1 + n)`.
pub fn nil_inv<C: Scalar>(u: &NilPoly<C>) -> Result<NilPoly<C>> {
    let c = u.scalar().clone();
    if c.is_zero() {
        return Err(GlsmError::ZeroScalarPart);
    }
    let cinv = C::one() / c;
    let mut n = u.scale(&cinv);
    n.c[0] = C::zero();
    let mut out = NilPoly::one();
    let mut power = NilPoly::one();
    for k in 1..=3 {
        power = nil_mul(&power, &n);
        out = if k % 2 == 1 { &out - &power } else { &out + &power };
    }
    Ok(out.scale(&cinv))
}

impl<C: Scalar> Add for &NilPoly<C> {
    type Output = NilPoly<C>;
    fn add(self, o: &NilPoly<C>) -> NilPoly<C> {
        NilPoly {
            c: std::array::from_fn(|i| self.c[i].clone() + o.c[i].clone()),
        }
    }
}

impl<C: Scalar> Sub for &NilPoly<C> {
    type Output = NilPoly<C>;
    fn sub(self, o: &NilPoly<C>) -> NilPoly<C> {
        NilPoly {
            c: std::array::from_fn(|i| self.c[i].clone() - o.c[i].clone()),
        }
    }
}

impl<C: Scalar> Mul for &NilPoly<C> {
    type Output = NilPoly<C>;
    fn mul(self, o: &NilPoly<C>) -> NilPoly<C> {
        nil_mul(self, o)
    }
}

impl<C: Scalar> Neg for &NilPoly<C> {
    type Output = NilPoly<C>;
    fn neg(self) -> NilPoly<C> {
        NilPoly {
            c: std::array::from_fn(|i| -self.c[i].clone()),
        }
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for NilPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms().map(|(m, a)| format!("({a}){m}")).collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Group element `(m_x, m_y, m_z, m_a)` of `(μ_3)^4`, each entry stored as
/// `3 m` in `0..3`. The element `1_{<β>}` of a degree is `SectorLabel::of(β)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SectorLabel(pub [u8; 4]);

impl SectorLabel {
    pub const UNTWISTED: SectorLabel = SectorLabel([0; 4]);

    /// `<β>`, the fractional parts of a degree.
    pub fn of(beta: &Degree) -> SectorLabel {
        SectorLabel(beta.0.map(|t| t.frac3() as u8))
    }

    /// `<-β>`.
    pub fn of_neg(beta: &Degree) -> SectorLabel {
        SectorLabel(beta.0.map(|t| (-t).frac3() as u8))
    }

    pub fn m(&self, v: Var) -> u8 {
        self.0[v.index()]
    }

    pub fn m_a(&self) -> u8 {
        self.0[3]
    }

    pub fn with(&self, v: Var, m: u8) -> SectorLabel {
        let mut s = self.0;
        s[v.index()] = m % 3;
        SectorLabel(s)
    }

    pub fn inverse(&self) -> SectorLabel {
        SectorLabel(self.0.map(|m| (3 - m) % 3))
    }

    pub fn permuted(&self, perm: [Var; 3]) -> SectorLabel {
        let mut s = self.0;
        for v in Var::ALL {
            s[perm[v.index()].index()] = self.0[v.index()];
        }
        SectorLabel(s)
    }

    pub fn all() -> impl Iterator<Item = SectorLabel> {
        (0..81u8).map(|k| SectorLabel([k % 3, (k / 3) % 3, (k / 9) % 3, k / 27]))
    }

    /// Entries as rational strings, e.g. `["0","0","1/3","0"]`.
    pub fn json_strings(&self) -> Vec<String> {
        self.0.iter().map(|&m| Thirds(i64::from(m)).to_string()).collect()
    }

    pub fn from_json_strings(s: &[String]) -> Result<SectorLabel> {
        if s.len() != 4 {
            return Err(GlsmError::BadJson("sector needs 4 entries".into()));
        }
        let mut out = [0u8; 4];
        for (slot, t) in out.iter_mut().zip(s) {
            *slot = Thirds::parse(t)?.frac3() as u8;
        }
        Ok(SectorLabel(out))
    }

    /// Roots of unity notation `(ζ,ζ²,1,1)`.
    pub fn zeta_string(&self) -> String {
        let z = |m: u8| match m {
            0 => "1",
            1 => "ζ",
            _ => "ζ²",
        };
        format!("({},{},{},{})", z(self.0[0]), z(self.0[1]), z(self.0[2]), z(self.0[3]))
    }
}

impl fmt::Display for SectorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.json_strings().join(","))
    }
}

/// Finite sum of sector-labelled nilpotent polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbientClass<C> {
    parts: BTreeMap<SectorLabel, NilPoly<C>>,
}

impl<C: Scalar> Default for AmbientClass<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> AmbientClass<C> {
    pub fn zero() -> Self {
        AmbientClass { parts: BTreeMap::new() }
    }

    pub fn single(sector: SectorLabel, p: NilPoly<C>) -> Self {
        let mut a = Self::zero();
        a.add_part(sector, p);
        a
    }

    pub fn add_part(&mut self, sector: SectorLabel, p: NilPoly<C>) {
        let sum = match self.parts.remove(&sector) {
            Some(q) => &q + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.parts.insert(sector, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, p) in &other.parts {
            out.add_part(*s, p.clone());
        }
        out
    }

    pub fn scale(&self, a: &C) -> Self {
        self.mul_poly(&NilPoly::constant(a.clone()))
    }

    pub fn mul_poly(&self, q: &NilPoly<C>) -> Self {
        let mut out = Self::zero();
        for (s, p) in &self.parts {
            out.add_part(*s, nil_mul(p, q));
        }
        out
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D + Copy) -> AmbientClass<D> {
        let mut out = AmbientClass::zero();
        for (s, p) in &self.parts {
            out.add_part(*s, p.map(f));
        }
        out
    }

    pub fn to_complex(&self) -> AmbientClass<Complex64> {
        self.map(|a| a.to_complex())
    }

    pub fn parts(&self) -> impl Iterator<Item = (&SectorLabel, &NilPoly<C>)> {
        self.parts.iter()
    }

    pub fn part(&self, s: &SectorLabel) -> Option<&NilPoly<C>> {
        self.parts.get(s)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// `(sector, monomial, coefficient)` triples with nonzero coefficient.
    pub fn entries(&self) -> Vec<(SectorLabel, Monomial, C)> {
        self.parts
            .iter()
            .flat_map(|(s, p)| p.terms().map(move |(m, a)| (*s, m, a.clone())))
            .collect()
    }
}

/// Coordinates of a class of `ℋ(θ)` in the ordered ten-element basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateClass<C> {
    pub chamber: Chamber,
    pub coeffs: Vec<C>,
}

impl<C: Scalar> StateClass<C> {
    pub fn zero(chamber: Chamber) -> Self {
        StateClass {
            chamber,
            coeffs: vec![C::zero(); 10],
        }
    }

    pub fn basis_vector(chamber: Chamber, i: usize) -> Self {
        let mut s = Self::zero(chamber);
        s.coeffs[i] = C::one();
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        StateClass {
            chamber: self.chamber,
            coeffs,
        }
    }

    pub fn scale(&self, a: &C) -> Self {
        StateClass {
            chamber: self.chamber,
            coeffs: self.coeffs.iter().map(|c| c.clone() * a.clone()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The ambient class whose reduction is `self`.
    pub fn to_ambient(&self) -> AmbientClass<C> {
        let basis = state_basis(&self.chamber);
        let mut out = AmbientClass::zero();
        for (e, a) in basis.elements.iter().zip(&self.coeffs) {
            out.add_part(e.sector, NilPoly::monomial(e.monomial, a.clone()));
        }
        out
    }

    pub fn to_complex(&self) -> StateClass<Complex64> {
        StateClass {
            chamber: self.chamber,
            coeffs: self.coeffs.iter().map(|a| a.to_complex()).collect(),
        }
    }
}

/// Projects an ambient class onto the narrow state space of `θ`.
///
/// Monomials in `H_v` for subscript `v` vanish, nonconstant monomials on
/// zero-dimensional sectors vanish and broad sectors vanish entirely. A
/// sector whose fixed locus misses `Z(θ)` carries nothing; a nonzero
/// nonconstant monomial there is reported as `UnknownSector`.
pub fn reduce_to_state<C: Scalar>(c: &AmbientClass<C>, theta: &Chamber) -> Result<StateClass<C>> {
    let basis = state_basis(theta);
    let mut out = StateClass::<C>::zero(theta.canonical());
    for (sector, p) in c.parts() {
        match classify_sector(theta, sector) {
            SectorKind::Broad => {}
            SectorKind::Absent => {
                if p.terms().any(|(m, _)| !m.is_one()) {
                    return Err(GlsmError::UnknownSector(sector.to_string()));
                }
            }
            SectorKind::Narrow { .. } => {
                for (m, a) in p.terms() {
                    if let Some(i) = basis.index_of(sector, m) {
                        out.coeffs[i] = out.coeffs[i].clone() + a.clone();
                    }
                }
            }
        }
    }
    Ok(out)
}

/// First-order dual number `a + b ε`, `ε^2 = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualNum {
    pub a: Complex64,
    pub b: Complex64,
}

impl DualNum {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        DualNum { a, b }
    }

    pub fn constant(a: Complex64) -> Self {
        DualNum {
            a,
            b: Complex64::zero(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::one())
    }

    pub fn inv(self) -> Result<Self> {
        if self.a.is_zero() {
            return Err(GlsmError::ZeroDualValue);
        }
        let ia = self.a.inv();
        Ok(DualNum {
            a: ia,
            b: -self.b * ia * ia,
        })
    }

    pub fn scale(self, k: Complex64) -> Self {
        DualNum {
            a: self.a * k,
            b: self.b * k,
        }
    }

    /// `a + b H_v` as a nilpotent polynomial.
    pub fn to_nilpoly(self, v: Var) -> NilPoly<Complex64> {
        let mut p = NilPoly::constant(self.a);
        p.set_coeff(Monomial::var(v), self.b);
        p
    }
}

impl Add for DualNum {
    type Output = DualNum;
    fn add(self, o: DualNum) -> DualNum {
        DualNum {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }
}

impl Sub for DualNum {
    type Output = DualNum;
    fn sub(self, o: DualNum) -> DualNum {
        DualNum {
            a: self.a - o.a,
            b: self.b - o.b,
        }
    }
}

impl Mul for DualNum {
    type Output = DualNum;
    fn mul(self, o: DualNum) -> DualNum {
        DualNum {
            a: self.a * o.a,
            b: self.a * o.b + self.b * o.a,
        }
    }
}

impl Neg for DualNum {
    type Output = DualNum;
    fn neg(self) -> DualNum {
        DualNum { a: -self.a, b: -self.b }
    }
}
