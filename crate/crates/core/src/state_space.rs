//! Inertia sectors of `Z(θ)`, ages, the ten-element narrow state space
//! `ℋ(θ)` with its shifted grading, and the basis identifications between
//! chambers.
//!
//! A group element is `g = (m_x, m_y, m_z, m_a)` with entries in `(1/3)Z/Z`.
//! It acts on `v0` with weight `m_v - m_a`, on `v1, v2` with weight `m_v`,
//! and trivially on `a` and the `p_v`. For a superscript variable the fixed
//! locus meets `Z(θ)` only if `m_v = 0`; it is then the curve `E` when
//! `m_a = 0` and three points otherwise. For a subscript variable the sector
//! is narrow exactly when `m_v ∉ {0, m_a}`.

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Zero;

use crate::coh_ring::{Monomial, Scalar, SectorLabel, StateClass};
use crate::error::{GlsmError, Result};
use crate::model::{Chamber, Var};
use crate::thirds::Thirds;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectorKind {
    /// Compact fixed locus meeting `Z(θ)`.
    Narrow { locus_dim: usize },
    /// Fixed locus meets `Z(θ)` but is not compact.
    Broad,
    /// Fixed locus misses `Z(θ)`.
    Absent,
}

pub fn classify_sector(theta: &Chamber, s: &SectorLabel) -> SectorKind {
    let m_a = s.m_a();
    if theta.superscript_vars().iter().any(|&v| s.m(v) != 0) {
        return SectorKind::Absent;
    }
    if theta.subscript_vars().iter().any(|&v| s.m(v) == 0 || s.m(v) == m_a) {
        return SectorKind::Broad;
    }
    let locus_dim = if m_a == 0 { theta.superscript_vars().len() } else { 0 };
    SectorKind::Narrow { locus_dim }
}

/// Age of `g` on the thirteen-dimensional ambient space.
pub fn age(s: &SectorLabel) -> Thirds {
    let m_a = i64::from(s.m_a());
    let n: i64 = Var::ALL
        .iter()
        .map(|&v| {
            let m = i64::from(s.m(v));
            (m - m_a).rem_euclid(3) + 2 * m
        })
        .sum();
    Thirds(n)
}

/// Shifted degree `2 age + 2 (dim Z(θ) - 3) + 2 |monomial|`.
pub fn shifted_degree(theta: &Chamber, s: &SectorLabel, m: Monomial) -> i64 {
    let a = age(s);
    debug_assert!(a.is_integer());
    2 * a.floor() + 2 * (theta.superscript_vars().len() as i64 - 3) + 2 * m.len() as i64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorRecord {
    pub element: SectorLabel,
    pub age: Thirds,
    pub narrow: bool,
    pub locus_dim: usize,
    pub basis_slots: Vec<(Monomial, i64)>,
}

impl SectorRecord {
    pub fn locus_description(&self) -> String {
        match self.locus_dim {
            0 => "points".to_string(),
            1 => "E".to_string(),
            d => format!("E^{d}"),
        }
    }
}

/// Monomials supported on a narrow sector.
fn slots(theta: &Chamber, s: &SectorLabel) -> Vec<Monomial> {
    if s.m_a() != 0 {
        return vec![Monomial::ONE];
    }
    let sup = Monomial::from_vars(&theta.superscript_vars());
    Monomial::all().filter(|m| m.0 & !sup.0 == 0).collect()
}

/// Narrow sectors meeting `Z(θ)`, ordered by age and then element.
pub fn enumerate_sectors(theta: &Chamber) -> Vec<SectorRecord> {
    let mut out: Vec<SectorRecord> = SectorLabel::all()
        .filter_map(|s| match classify_sector(theta, &s) {
            SectorKind::Narrow { locus_dim } => Some(SectorRecord {
                element: s,
                age: age(&s),
                narrow: true,
                locus_dim,
                basis_slots: slots(theta, &s)
                    .into_iter()
                    .map(|m| (m, shifted_degree(theta, &s, m)))
                    .collect(),
            }),
            _ => None,
        })
        .collect();
    out.sort_by_key(|r| (r.age, r.element));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub sector: SectorLabel,
    pub monomial: Monomial,
    pub degree: i64,
}

impl BasisElement {
    /// Tensor notation such as `(H_x⊗1⊗1_ζ)_1`.
    pub fn label(&self, theta: &Chamber) -> String {
        let slot = |v: Var| -> String {
            if theta.is_superscript(v) {
                if self.monomial.contains(v) {
                    format!("H_{v}")
                } else {
                    "1".to_string()
                }
            } else if self.sector.m(v) == 1 {
                "1_ζ".to_string()
            } else {
                "1_ζ²".to_string()
            }
        };
        let g = ["1", "ζ", "ζ²"][self.sector.m_a() as usize];
        format!("({}⊗{}⊗{})_{g}", slot(Var::X), slot(Var::Y), slot(Var::Z))
    }
}

/// Ordered basis of `ℋ(θ)`, sorted by shifted degree, then sector, then monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateBasis {
    pub chamber: Chamber,
    pub elements: Vec<BasisElement>,
}

impl StateBasis {
    pub fn index_of(&self, sector: &SectorLabel, m: Monomial) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| e.sector == *sector && e.monomial == m)
    }

    /// Counts in degrees 0, 2, 4, 6.
    pub fn degree_histogram(&self) -> [usize; 4] {
        let mut h = [0; 4];
        for e in &self.elements {
            h[(e.degree / 2) as usize] += 1;
        }
        h
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.elements.iter().map(|e| e.degree).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|e| e.label(&self.chamber)).collect()
    }
}

impl fmt::Display for StateBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.elements {
            writeln!(f, "{:>2}  {}", e.degree, e.label(&self.chamber))?;
        }
        Ok(())
    }
}

fn compute_basis(theta: &Chamber) -> StateBasis {
    let mut elements: Vec<BasisElement> = enumerate_sectors(theta)
        .into_iter()
        .flat_map(|r| {
            r.basis_slots.into_iter().map(move |(monomial, degree)| BasisElement {
                sector: r.element,
                monomial,
                degree,
            })
        })
        .collect();
    elements.sort_by_key(|e| (e.degree, e.sector, e.monomial));
    StateBasis {
        chamber: theta.canonical(),
        elements,
    }
}

/// The basis of `ℋ(θ)`, computed once per chamber.
pub fn state_basis(theta: &Chamber) -> &'static StateBasis {
    static CACHE: [OnceLock<StateBasis>; 8] = [const { OnceLock::new() }; 8];
    CACHE[theta.pattern_index()].get_or_init(|| compute_basis(theta))
}

/// Image of a basis element when `v` crosses its wall, starting from `from`.
fn move_element(from: &Chamber, v: Var, e: &BasisElement) -> (SectorLabel, Monomial) {
    let s = e.sector;
    let m_a = s.m_a();
    if from.is_superscript(v) {
        if m_a != 0 {
            (s.with(v, 3 - m_a), e.monomial)
        } else if e.monomial.contains(v) {
            (s.with(v, 2), e.monomial.without(v))
        } else {
            (s.with(v, 1), e.monomial)
        }
    } else if m_a == 0 && s.m(v) == 2 {
        (s.with(v, 0), e.monomial.with(v))
    } else {
        (s.with(v, 0), e.monomial)
    }
}

/// `perm[i]` is the index in the basis of `θ'` of the image of basis element `i` of `θ`.
pub fn iso_permutation(theta: &Chamber, theta2: &Chamber) -> Vec<usize> {
    let b = state_basis(theta);
    let moves = theta.differing_vars(theta2);
    b.elements
        .iter()
        .map(|e| {
            let mut cur = *theta;
            let mut el = *e;
            for &v in &moves {
                let (sector, monomial) = move_element(&cur, v, &el);
                cur = cur.with_moved(v);
                let idx = state_basis(&cur)
                    .index_of(&sector, monomial)
                    .expect("image is a basis element");
                el = state_basis(&cur).elements[idx];
            }
            state_basis(theta2)
                .index_of(&el.sector, el.monomial)
                .expect("image is a basis element")
        })
        .collect()
}

/// The graded isomorphism `ℋ(θ) → ℋ(θ')` along single-variable moves.
pub fn state_iso<C: Scalar>(theta: &Chamber, theta2: &Chamber, c: &StateClass<C>) -> Result<StateClass<C>> {
    if c.chamber.pattern_index() != theta.pattern_index() {
        return Err(GlsmError::Precondition(format!(
            "a class of {theta}, got one of {}",
            c.chamber
        )));
    }
    let perm = iso_permutation(theta, theta2);
    let mut out = StateClass::zero(theta2.canonical());
    for (i, a) in c.coeffs.iter().enumerate() {
        out.coeffs[perm[i]] = a.clone();
    }
    Ok(out)
}

/// Pairing matrix on `ℋ(θ)`, pairing `(g, m)` with `(g^{-1}, m^c)`.
///
/// The normalisation `∫ H_xH_yH_z = 1/3` is a convention: only the support
/// pattern (which slots pair) is meaningful.
pub fn pairing(theta: &Chamber) -> Vec<Vec<BigRational>> {
    let b = state_basis(theta);
    let sup = Monomial::from_vars(&theta.superscript_vars());
    let value = BigRational::new(1.into(), 3.into());
    let mut out = vec![vec![BigRational::zero(); 10]; 10];
    for (i, e) in b.elements.iter().enumerate() {
        let partner = if e.sector.m_a() == 0 {
            Monomial(sup.0 & !e.monomial.0)
        } else {
            Monomial::ONE
        };
        if let Some(j) = b.index_of(&e.sector.inverse(), partner) {
            out[i][j] = value.clone();
        }
    }
    out
}

/// Whether the pairing matrix is nondegenerate (it is a scaled permutation).
pub fn pairing_is_perfect(m: &[Vec<BigRational>]) -> bool {
    let n = m.len();
    (0..n).all(|i| m[i].iter().filter(|a| !a.is_zero()).count() == 1)
        && (0..n).all(|j| (0..n).filter(|&i| !m[i][j].is_zero()).count() == 1)
}

/// The unit `1_θ`: the unique degree-zero basis element.
pub fn unit_index(theta: &Chamber) -> usize {
    let b = state_basis(theta);
    let i = b
        .elements
        .iter()
        .position(|e| e.degree == 0)
        .expect("degree zero element");
    debug_assert!(b.elements[i].monomial.is_one());
    i
}

pub fn unit_class<C: Scalar>(theta: &Chamber) -> StateClass<C> {
    let mut s = StateClass::zero(theta.canonical());
    s.coeffs[unit_index(theta)] = C::one();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(s: &str) -> Chamber {
        Chamber::parse(s).unwrap()
    }

    #[test]
    fn histograms() {
        for t in Chamber::all_supported() {
            assert_eq!(state_basis(&t).degree_histogram(), [1, 4, 4, 1], "{t}");
        }
    }

    #[test]
    fn lg_ages() {
        let recs = enumerate_sectors(&ch("---+"));
        assert_eq!(recs.len(), 10);
        let age_of = |z: &str| recs.iter().find(|r| r.element.zeta_string() == z).unwrap().age;
        assert_eq!(age_of("(ζ,ζ,ζ,1)"), Thirds::int(3));
        assert_eq!(age_of("(ζ²,ζ²,ζ²,ζ)"), Thirds::int(5));
    }

    #[test]
    fn nine_point_sector() {
        let recs = enumerate_sectors(&ch("++-+"));
        assert_eq!(recs.len(), 4);
        let r = recs.iter().find(|r| r.element == SectorLabel([0, 0, 2, 1])).unwrap();
        assert!(r.narrow);
        assert_eq!(r.locus_dim, 0);
        assert_eq!(r.basis_slots, vec![(Monomial::ONE, 4)]);
    }

    #[test]
    fn geometric_basis() {
        let labels = state_basis(&Chamber::GEOMETRIC).labels();
        assert_eq!(labels[0], "(1⊗1⊗1)_1");
        assert_eq!(labels[9], "(H_x⊗H_y⊗H_z)_1");
        assert!(labels[1..5].contains(&"(1⊗1⊗1)_ζ²".to_string()));
    }

    #[test]
    fn iso_examples() {
        let t = Chamber::GEOMETRIC;
        let t2 = ch("++-+");
        let b = state_basis(&t);
        let b2 = state_basis(&t2);
        let perm = iso_permutation(&t, &t2);
        let one = b.index_of(&SectorLabel::UNTWISTED, Monomial::ONE).unwrap();
        assert_eq!(b2.elements[perm[one]].label(&t2), "(1⊗1⊗1_ζ)_1");
        let hz = b.index_of(&SectorLabel::UNTWISTED, Monomial::var(Var::Z)).unwrap();
        assert_eq!(b2.elements[perm[hz]].label(&t2), "(1⊗1⊗1_ζ²)_1");
        let back = iso_permutation(&t2, &t);
        for i in 0..10 {
            assert_eq!(back[perm[i]], i);
            assert_eq!(b.elements[i].degree, b2.elements[perm[i]].degree);
        }
    }

    #[test]
    fn pairing_is_graded_and_perfect() {
        for t in Chamber::all_supported() {
            let p = pairing(&t);
            assert!(pairing_is_perfect(&p));
            let b = state_basis(&t);
            for i in 0..10 {
                for j in 0..10 {
                    if !p[i][j].is_zero() {
                        assert_eq!(b.elements[i].degree + b.elements[j].degree, 6);
                    }
                }
            }
        }
    }
}
