//! The fixed model: thirteen coordinates on C^13 acted on by (C*)^4 x C*_R,
//! the GIT chambers of the character space and the chamber-dependent
//! combinatorics (unstable loci, semistability, toric divisors).
//!
//! A chamber is a character `t_x^{e_x} t_y^{e_y} t_z^{e_z} t_a^{e_a}` with
//! nonzero exponents. A variable group `v` with `e_v > 0` is *superscript*,
//! one with `e_v < 0` is *subscript*. Only chambers with `e_a > 0` are
//! supported.

use std::fmt;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{GlsmError, Result};

/// Superpotential of the model, kept for documentation only.
pub const SUPERPOTENTIAL: &str = "p_x(a x0^3 + x1^3 + x2^3) + p_y(a y0^3 + y1^3 + y2^3) + p_z(a z0^3 + z1^3 + z2^3)";

/// One of the three symmetric variable groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z"][self.index()]
    }

    pub fn parse(s: &str) -> Result<Var> {
        match s.trim() {
            "x" => Ok(Var::X),
            "y" => Ok(Var::Y),
            "z" => Ok(Var::Z),
            other => Err(GlsmError::Precondition(format!("variable x, y or z, got `{other}`"))),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The thirteen coordinates of C^13, equivalently the character list R.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    X0,
    X1,
    X2,
    Y0,
    Y1,
    Y2,
    Z0,
    Z1,
    Z2,
    A,
    Px,
    Py,
    Pz,
}

impl Coord {
    pub const ALL: [Coord; 13] = [
        Coord::X0,
        Coord::X1,
        Coord::X2,
        Coord::Y0,
        Coord::Y1,
        Coord::Y2,
        Coord::Z0,
        Coord::Z1,
        Coord::Z2,
        Coord::A,
        Coord::Px,
        Coord::Py,
        Coord::Pz,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        GlsmModel::COORD_NAMES[self.index()]
    }

    /// Weights under (t_x, t_y, t_z, t_a, t_R).
    pub fn weights(self) -> [i64; 5] {
        GlsmModel::WEIGHTS[self.index()]
    }

    /// The variable group this coordinate belongs to. `a` belongs to none,
    /// `p_v` belongs to `v`.
    pub fn group(self) -> Option<Var> {
        match self {
            Coord::X0 | Coord::X1 | Coord::X2 | Coord::Px => Some(Var::X),
            Coord::Y0 | Coord::Y1 | Coord::Y2 | Coord::Py => Some(Var::Y),
            Coord::Z0 | Coord::Z1 | Coord::Z2 | Coord::Pz => Some(Var::Z),
            Coord::A => None,
        }
    }

    pub fn is_fiber(self) -> bool {
        matches!(self, Coord::Px | Coord::Py | Coord::Pz)
    }

    /// The coordinates `v0, v1, v2` of a group.
    pub fn base_coords(v: Var) -> [Coord; 3] {
        let i = 3 * v.index();
        [Coord::ALL[i], Coord::ALL[i + 1], Coord::ALL[i + 2]]
    }

    pub fn fiber(v: Var) -> Coord {
        Coord::ALL[10 + v.index()]
    }

    /// Image under a permutation of the variable groups.
    pub fn permuted(self, perm: [Var; 3]) -> Coord {
        match self.group() {
            None => self,
            Some(v) if self.is_fiber() => Coord::fiber(perm[v.index()]),
            Some(v) => Coord::base_coords(perm[v.index()])[self.index() - 3 * v.index()],
        }
    }
}

/// Static data of the model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlsmModel {
    pub coord_names: [&'static str; 13],
    pub weights: [[i64; 5]; 13],
}

impl GlsmModel {
    pub const COORD_NAMES: [&'static str; 13] = [
        "x0", "x1", "x2", "y0", "y1", "y2", "z0", "z1", "z2", "a", "px", "py", "pz",
    ];

    pub const WEIGHTS: [[i64; 5]; 13] = [
        [1, 0, 0, -1, 0],
        [1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0],
        [0, 1, 0, -1, 0],
        [0, 1, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 1, -1, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 3, 0],
        [-3, 0, 0, 0, 1],
        [0, -3, 0, 0, 1],
        [0, 0, -3, 0, 1],
    ];

    pub fn standard() -> Self {
        GlsmModel {
            coord_names: Self::COORD_NAMES,
            weights: Self::WEIGHTS,
        }
    }
}

/// A GIT chamber, represented by a character with nonzero exponents and a
/// positive `a`-exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chamber {
    exponents: [i64; 4],
}

impl Chamber {
    pub const GEOMETRIC: Chamber = Chamber {
        exponents: [3, 3, 3, 3],
    };

    /// Validates a raw exponent vector `(e_x, e_y, e_z, e_a)`.
    pub fn new(exponents: [i64; 4]) -> Result<Self> {
        if exponents.contains(&0) {
            return Err(GlsmError::WallCharacter(format!("{exponents:?}")));
        }
        if exponents[3] < 0 {
            return Err(GlsmError::UnsupportedChamber(format!("{exponents:?}")));
        }
        Ok(Chamber { exponents })
    }

    /// Builds the canonical `±3` representative from signs.
    pub fn from_signs(signs: [i8; 4]) -> Result<Self> {
        Self::new(signs.map(|s| 3 * i64::from(s.signum())))
    }

    /// Parses `"++-+"` (also `0` for a wall entry) or `"3,3,-3,3"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim().replace('\u{2212}', "-");
        let bad = || GlsmError::BadChamberSpec(spec.clone());
        if spec.contains(',') {
            let parts: Vec<&str> = spec.split(',').collect();
            if parts.len() != 4 {
                return Err(bad());
            }
            let mut e = [0i64; 4];
            for (slot, p) in e.iter_mut().zip(&parts) {
                *slot = p.trim().parse().map_err(|_| bad())?;
            }
            Self::new(e)
        } else {
            let chars: Vec<char> = spec.chars().collect();
            if chars.len() != 4 {
                return Err(bad());
            }
            let mut s = [0i8; 4];
            for (slot, c) in s.iter_mut().zip(&chars) {
                *slot = match c {
                    '+' => 1,
                    '-' => -1,
                    '0' => 0,
                    _ => return Err(bad()),
                };
            }
            Self::from_signs(s)
        }
    }

    /// The named chambers `θ^{xyza}, θ^{xya}_z, θ^{xa}_{yz}, θ^a_{xyz}`.
    pub fn theta_set() -> [Chamber; 4] {
        [
            Chamber {
                exponents: [3, 3, 3, 3],
            },
            Chamber {
                exponents: [3, 3, -3, 3],
            },
            Chamber {
                exponents: [3, -3, -3, 3],
            },
            Chamber {
                exponents: [-3, -3, -3, 3],
            },
        ]
    }

    /// All eight supported chambers (every sign pattern with `e_a > 0`).
    pub fn all_supported() -> Vec<Chamber> {
        (0..8u8)
            .map(|bits| {
                let s = |i: u8| if bits & (1 << i) == 0 { 1 } else { -1 };
                Chamber::from_signs([s(0), s(1), s(2), 1]).expect("valid signs")
            })
            .collect()
    }

    pub fn exponents(&self) -> [i64; 4] {
        self.exponents
    }

    /// The `±3` representative of the same chamber.
    pub fn canonical(&self) -> Chamber {
        Chamber {
            exponents: self.exponents.map(|e| 3 * e.signum()),
        }
    }

    pub fn signs(&self) -> [i8; 4] {
        self.exponents.map(|e| e.signum() as i8)
    }

    pub fn sign_string(&self) -> String {
        self.signs().iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
    }

    pub fn is_superscript(&self, v: Var) -> bool {
        self.exponents[v.index()] > 0
    }

    pub fn is_subscript(&self, v: Var) -> bool {
        !self.is_superscript(v)
    }

    pub fn superscript_vars(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.is_superscript(v)).collect()
    }

    pub fn subscript_vars(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.is_subscript(v)).collect()
    }

    /// Number of subscript variables, which is also the `t_R` exponent of the
    /// lift of the canonical character.
    pub fn num_subscript(&self) -> i64 {
        self.subscript_vars().len() as i64
    }

    /// Index in `0..8` of the sign pattern, used for per-chamber caches.
    pub fn pattern_index(&self) -> usize {
        Var::ALL
            .iter()
            .map(|&v| usize::from(self.is_subscript(v)) << v.index())
            .sum()
    }

    /// The chamber obtained by moving `v` across its wall.
    pub fn with_moved(&self, v: Var) -> Chamber {
        let mut e = self.exponents;
        e[v.index()] = -e[v.index()];
        Chamber { exponents: e }
    }

    /// Image under the permutation sending group `v` to `perm[v]`.
    pub fn permuted(&self, perm: [Var; 3]) -> Chamber {
        let mut e = self.exponents;
        for v in Var::ALL {
            e[perm[v.index()].index()] = self.exponents[v.index()];
        }
        Chamber { exponents: e }
    }

    /// Variables whose status differs between two chambers.
    pub fn differing_vars(&self, other: &Chamber) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.is_superscript(v) != other.is_superscript(v))
            .collect()
    }

    /// Paper-style name such as `θ^{xya}_z`.
    pub fn name(&self) -> String {
        let sup: String = self.superscript_vars().iter().map(|v| v.name()).collect();
        let sub: String = self.subscript_vars().iter().map(|v| v.name()).collect();
        let mut s = format!("θ^{{{sup}a}}");
        if !sub.is_empty() {
            s.push_str(&format!("_{{{sub}}}"));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "exponents": self.exponents,
            "subscript": self.subscript_vars().iter().map(|v| v.name()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.sign_string())
    }
}

/// An irreducible component of the unstable locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnstableComponent {
    /// `{v0 = v1 = v2 = 0}`.
    BaseVanishes(Var),
    /// `{p_v = 0}`.
    FiberVanishes(Var),
    /// `{a = 0}`.
    AVanishes,
}

impl UnstableComponent {
    pub fn coords(&self) -> Vec<Coord> {
        match *self {
            UnstableComponent::BaseVanishes(v) => Coord::base_coords(v).to_vec(),
            UnstableComponent::FiberVanishes(v) => vec![Coord::fiber(v)],
            UnstableComponent::AVanishes => vec![Coord::A],
        }
    }

    pub fn contains(&self, point: &[Complex64; 13]) -> bool {
        self.coords()
            .iter()
            .all(|c| point[c.index()] == Complex64::new(0.0, 0.0))
    }

    pub fn permuted(&self, perm: [Var; 3]) -> UnstableComponent {
        match *self {
            UnstableComponent::BaseVanishes(v) => UnstableComponent::BaseVanishes(perm[v.index()]),
            UnstableComponent::FiberVanishes(v) => UnstableComponent::FiberVanishes(perm[v.index()]),
            UnstableComponent::AVanishes => UnstableComponent::AVanishes,
        }
    }
}

impl fmt::Display for UnstableComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.coords().iter().map(|c| c.name()).collect();
        write!(f, "{{{}=0}}", names.join("="))
    }
}

/// Components of the unstable locus, one per variable group in order, then `{a=0}`.
pub fn unstable_components(theta: &Chamber) -> Vec<UnstableComponent> {
    let mut out: Vec<UnstableComponent> = Var::ALL
        .iter()
        .map(|&v| {
            if theta.is_superscript(v) {
                UnstableComponent::BaseVanishes(v)
            } else {
                UnstableComponent::FiberVanishes(v)
            }
        })
        .collect();
    out.push(UnstableComponent::AVanishes);
    out
}

pub fn is_semistable(point: &[Complex64; 13], theta: &Chamber) -> bool {
    !unstable_components(theta).iter().any(|c| c.contains(point))
}

/// A class `c_x H_x + c_y H_y + c_z H_z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DivisorForm {
    pub coeffs: [i64; 3],
}

impl DivisorForm {
    pub fn coeff(&self, v: Var) -> i64 {
        self.coeffs[v.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0, 0, 0]
    }
}

impl fmt::Display for DivisorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for v in Var::ALL {
            let c = self.coeff(v);
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let mag = if mag == 1 { String::new() } else { mag.to_string() };
            write!(f, "{sign}{mag}H_{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// The divisor `D_ρ` of the line bundle attached to a coordinate character:
/// its `t_v` weights paired with `H_v`, where `H_v = 0` for subscript `v`.
pub fn toric_divisor(rho: Coord, theta: &Chamber) -> DivisorForm {
    let w = rho.weights();
    let mut coeffs = [0i64; 3];
    for v in theta.superscript_vars() {
        coeffs[v.index()] = w[v.index()];
    }
    DivisorForm { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let t = Chamber::parse("++-+").unwrap();
        assert_eq!(t.exponents(), [3, 3, -3, 3]);
        assert_eq!(t.subscript_vars(), vec![Var::Z]);
        assert_eq!(Chamber::parse("++++").unwrap().subscript_vars(), vec![]);
        assert!(matches!(Chamber::parse("+0-+"), Err(GlsmError::WallCharacter(_))));
        assert!(matches!(Chamber::parse("+++-"), Err(GlsmError::UnsupportedChamber(_))));
        assert!(matches!(Chamber::parse("++-"), Err(GlsmError::BadChamberSpec(_))));
        assert_eq!(Chamber::parse("3,3,-3,3").unwrap(), t);
        assert_eq!(Chamber::parse("1,2,-5,7").unwrap().canonical(), t);
    }

    #[test]
    fn names() {
        let names: Vec<String> = Chamber::theta_set().iter().map(|t| t.name()).collect();
        assert_eq!(names, ["θ^{xyza}", "θ^{xya}_{z}", "θ^{xa}_{yz}", "θ^{a}_{xyz}"]);
    }

    #[test]
    fn unstable_examples() {
        let show = |s: &str| {
            unstable_components(&Chamber::parse(s).unwrap())
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(show("++-+"), ["{x0=x1=x2=0}", "{y0=y1=y2=0}", "{pz=0}", "{a=0}"]);
        assert_eq!(show("++++"), ["{x0=x1=x2=0}", "{y0=y1=y2=0}", "{z0=z1=z2=0}", "{a=0}"]);
        assert_eq!(show("---+"), ["{px=0}", "{py=0}", "{pz=0}", "{a=0}"]);
    }

    #[test]
    fn semistable_examples() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut p = [one; 13];
        for t in Chamber::theta_set() {
            assert!(is_semistable(&p, &t));
        }
        p[Coord::A.index()] = zero;
        for t in Chamber::theta_set() {
            assert!(!is_semistable(&p, &t));
        }
        let mut p = [one; 13];
        for c in Coord::base_coords(Var::X) {
            p[c.index()] = zero;
        }
        assert!(!is_semistable(&p, &Chamber::GEOMETRIC));
        assert!(is_semistable(&p, &Chamber::parse("---+").unwrap()));
    }

    #[test]
    fn divisor_examples() {
        let t = Chamber::parse("++-+").unwrap();
        assert_eq!(toric_divisor(Coord::X1, &t).to_string(), "H_x");
        assert_eq!(toric_divisor(Coord::X0, &t).to_string(), "H_x");
        assert_eq!(toric_divisor(Coord::Px, &t).to_string(), "-3H_x");
        assert!(toric_divisor(Coord::Z1, &t).is_zero());
        for t in Chamber::all_supported() {
            assert!(toric_divisor(Coord::A, &t).is_zero());
        }
    }

    #[test]
    fn weight_rows() {
        assert_eq!(Coord::X0.weights(), [1, 0, 0, -1, 0]);
        assert_eq!(Coord::A.weights(), [0, 0, 0, 3, 0]);
        assert_eq!(Coord::Px.weights(), [-3, 0, 0, 0, 1]);
        assert_eq!(Coord::Pz.weights(), [0, 0, -3, 0, 1]);
    }
}
