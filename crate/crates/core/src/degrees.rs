//! Degrees `β = (β_x, β_y, β_z, β_a) ∈ ((1/3)Z)^4`, their pairings with
//! characters, the effectiveness and instability predicates, and the lattice
//! summed over by the I-function.

use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{GlsmError, Result};
use crate::model::{Chamber, Coord, Var};
use crate::thirds::Thirds;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(pub [Thirds; 4]);

impl Degree {
    /// Builds a degree from numerators over 3.
    pub fn thirds(x: i64, y: i64, z: i64, a: i64) -> Degree {
        Degree([Thirds(x), Thirds(y), Thirds(z), Thirds(a)])
    }

    pub fn get(&self, v: Var) -> Thirds {
        self.0[v.index()]
    }

    pub fn a(&self) -> Thirds {
        self.0[3]
    }

    pub fn with(&self, v: Var, t: Thirds) -> Degree {
        let mut d = self.0;
        d[v.index()] = t;
        Degree(d)
    }

    pub fn add(&self, o: &Degree) -> Degree {
        Degree(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn sub(&self, o: &Degree) -> Degree {
        Degree(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }

    pub fn permuted(&self, perm: [Var; 3]) -> Degree {
        let mut d = self.0;
        for v in Var::ALL {
            d[perm[v.index()].index()] = self.0[v.index()];
        }
        Degree(d)
    }

    /// Parses `"0,0,-1/3,0"`.
    pub fn parse(s: &str) -> Result<Degree> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(GlsmError::BadRational(s.to_string()));
        }
        let mut d = [Thirds::ZERO; 4];
        for (slot, p) in d.iter_mut().zip(parts) {
            *slot = Thirds::parse(p)?;
        }
        Ok(Degree(d))
    }

    pub fn strings(&self) -> Vec<String> {
        self.0.iter().map(|t| t.to_string()).collect()
    }

    pub fn from_strings(s: &[String]) -> Result<Degree> {
        if s.len() != 4 {
            return Err(GlsmError::BadJson("degree needs 4 entries".into()));
        }
        let mut d = [Thirds::ZERO; 4];
        for (slot, p) in d.iter_mut().zip(s) {
            *slot = Thirds::parse(p)?;
        }
        Ok(Degree(d))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.strings().join(","))
    }
}

/// Pairing of an integer character of `G × C*_R` with `(β, m - 2)`.
pub fn beta_rho_weights(w: [i64; 5], beta: &Degree, m: i64) -> Thirds {
    let mut n = 0;
    for i in 0..4 {
        n += w[i] * beta.0[i].0;
    }
    Thirds(n + 3 * w[4] * (m - 2))
}

pub fn beta_rho(rho: Coord, beta: &Degree, m: i64) -> Thirds {
    beta_rho_weights(rho.weights(), beta, m)
}

/// `β_0(θ, m)`: `(m - 2)/3` at subscript variables, zero elsewhere.
pub fn extremal_degree(theta: &Chamber, m: i64) -> Degree {
    let mut d = Degree::default();
    for v in theta.subscript_vars() {
        d.0[v.index()] = Thirds(m - 2);
    }
    d
}

/// Pairing with the lift of the canonical `±3` character, whose `t_R`
/// exponent is the number of subscript variables.
pub fn beta_theta(beta: &Degree, m: i64, theta: &Chamber) -> i64 {
    let signs = theta.signs();
    let mut n = 0;
    for v in Var::ALL {
        n += i64::from(signs[v.index()]) * beta.get(v).0;
    }
    n + beta.a().0 + theta.num_subscript() * (m - 2)
}

/// Necessary conditions for `(β, m)` to be effective.
pub fn passes_effectiveness(beta: &Degree, m: i64, theta: &Chamber) -> bool {
    if beta.a() < Thirds::ZERO {
        return false;
    }
    for v in Var::ALL {
        let b = beta.get(v);
        let ok = if theta.is_superscript(v) {
            b >= Thirds::ZERO
        } else {
            b <= Thirds(m - 2)
        };
        if !ok {
            return false;
        }
    }
    beta_theta(beta, m, theta) >= 0
}

/// Stability parameter of quasimap theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Epsilon {
    ZeroPlus,
    Infinity,
    Finite(BigRational),
}

impl Epsilon {
    pub fn parse(s: &str) -> Result<Epsilon> {
        match s.trim() {
            "0+" => Ok(Epsilon::ZeroPlus),
            "inf" | "∞" => Ok(Epsilon::Infinity),
            t => {
                let r = crate::thirds::parse_rational(t)?;
                if r.is_positive() {
                    Ok(Epsilon::Finite(r))
                } else {
                    Err(GlsmError::BadRational(format!("epsilon must be positive, got {t}")))
                }
            }
        }
    }
}

/// Whether `(β, m)` is unstable for the given `ε`.
pub fn is_unstable_tuple(beta: &Degree, m: i64, eps: &Epsilon, theta: &Chamber) -> bool {
    if m == 2 && *beta == extremal_degree(theta, 2) {
        return true;
    }
    if !(m == 0 || m == 1) {
        return false;
    }
    let bt = beta_theta(beta, m, theta);
    let threshold = BigRational::from_integer((2 - m).into());
    match eps {
        Epsilon::ZeroPlus => bt > 0,
        Epsilon::Infinity => false,
        Epsilon::Finite(e) => BigRational::from_integer(bt.into()) * e > threshold,
    }
}

/// The I-function summation lattice with `β_ϑ ≤ cutoff`, sorted by `β_ϑ`
/// and then lexicographically.
///
/// Superscript `v`: `β_v ∈ Z_{≥0}`. Subscript `v`: `β_v ∈ (1/3)Z_{<0} \ Z`.
/// `β_a ∈ (1/3)Z_{≥0}`.
pub fn enumerate_ifunction_degrees(theta: &Chamber, cutoff: i64) -> Vec<Degree> {
    if cutoff < 0 {
        return Vec::new();
    }
    // Per-variable choices (value in thirds, contribution to β_ϑ).
    let choices: Vec<Vec<(i64, i64)>> = Var::ALL
        .iter()
        .map(|&v| {
            if theta.is_superscript(v) {
                (0..=cutoff / 3).map(|n| (3 * n, 3 * n)).collect()
            } else {
                (1..=cutoff + 1).filter(|k| k % 3 != 0).map(|k| (-k, k - 1)).collect()
            }
        })
        .collect();
    let mut out = Vec::new();
    for &(x, cx) in &choices[0] {
        for &(y, cy) in &choices[1] {
            for &(z, cz) in &choices[2] {
                let used = cx + cy + cz;
                if used > cutoff {
                    continue;
                }
                for j in 0..=cutoff - used {
                    out.push(Degree::thirds(x, y, z, j));
                }
            }
        }
    }
    out.sort_by_key(|d| (beta_theta(d, 1, theta), *d));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(s: &str) -> Chamber {
        Chamber::parse(s).unwrap()
    }

    #[test]
    fn beta_rho_examples() {
        assert_eq!(beta_rho(Coord::Px, &Degree::thirds(3, 0, 0, 0), 1), Thirds(-12));
        assert_eq!(beta_rho(Coord::X0, &Degree::thirds(3, 0, 0, 1), 1), Thirds(2));
        for m in 0..4 {
            assert_eq!(beta_rho(Coord::A, &Degree::thirds(0, 0, 0, 1), m), Thirds(3));
        }
    }

    #[test]
    fn extremal_examples() {
        assert_eq!(extremal_degree(&ch("++-+"), 1), Degree::thirds(0, 0, -1, 0));
        assert_eq!(extremal_degree(&ch("++++"), 5), Degree::default());
        assert_eq!(extremal_degree(&ch("---+"), 2), Degree::default());
    }

    #[test]
    fn beta_theta_examples() {
        let t = ch("++-+");
        assert_eq!(beta_theta(&extremal_degree(&t, 1), 1, &t), 0);
        assert_eq!(beta_theta(&Degree::thirds(3, 0, -1, 0), 1, &t), 3);
        assert_eq!(beta_theta(&Degree::thirds(0, 0, 0, 1), 1, &ch("++++")), 1);
    }

    #[test]
    fn effectiveness_examples() {
        let t = ch("++-+");
        assert!(passes_effectiveness(&Degree::thirds(0, 0, -1, 0), 1, &t));
        for m in 0..4 {
            assert!(!passes_effectiveness(&Degree::thirds(-3, 0, 0, 0), m, &ch("++++")));
        }
        assert!(!passes_effectiveness(&Degree::thirds(0, 0, 3, 0), 1, &t));
    }

    #[test]
    fn unstable_examples() {
        let t = ch("++-+");
        let b = Degree::thirds(3, 0, -1, 0);
        for eps in [Epsilon::ZeroPlus, Epsilon::Infinity, Epsilon::parse("1/7").unwrap()] {
            assert!(is_unstable_tuple(&extremal_degree(&t, 2), 2, &eps, &t));
        }
        assert!(is_unstable_tuple(&b, 1, &Epsilon::ZeroPlus, &t));
        assert!(!is_unstable_tuple(&b, 1, &Epsilon::Infinity, &t));
        assert!(is_unstable_tuple(&b, 1, &Epsilon::parse("1/2").unwrap(), &t));
        assert!(!is_unstable_tuple(&b, 1, &Epsilon::parse("1/3").unwrap(), &t));
    }

    #[test]
    fn enumerate_examples() {
        let d = enumerate_ifunction_degrees(&ch("++++"), 1);
        assert!(d.contains(&Degree::default()));
        assert!(d.contains(&Degree::thirds(0, 0, 0, 1)));
        assert!(d.iter().all(|b| b.get(Var::X).is_integer()));
        assert_eq!(
            enumerate_ifunction_degrees(&ch("++-+"), 0),
            vec![Degree::thirds(0, 0, -1, 0)]
        );
        let d = enumerate_ifunction_degrees(&ch("---+"), 1);
        assert_eq!(d[0], Degree::thirds(-1, -1, -1, 0));
        assert_eq!(d.len(), 5);
    }
}
