//! The acceptance suite: eleven criteria, each checked against values that
//! are computed here independently of the code under test or copied from
//! the published tables.
//!
//! Two criteria contain checks that cannot pass as stated. Such checks are
//! marked as known gaps, and a criterion that fails only on known gaps is
//! reported as such instead of as a regression.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coh_ring::{DualNum, Monomial, SectorLabel};
use crate::degrees::{beta_theta, extremal_degree, is_unstable_tuple, passes_effectiveness, Degree, Epsilon};
use crate::error::GlsmError;
use crate::gamma_kit::{
    digamma, gamma, gamma_dual, givental_gamma_coefficient, h_constant, h_constant_numeric, rgamma_dual,
};
use crate::i_series::{build_i_series, givental_sign};
use crate::model::{toric_divisor, Chamber, Coord, Var};
use crate::orbi_bundle::{h0_dim, h1_dim, i_coefficient};
use crate::state_space::{enumerate_sectors, state_basis, unit_class};
use crate::thirds::Thirds;
use crate::wall_crossing::mellin_barnes::{
    contour_integral, mellin_barnes_continued, mellin_barnes_oracle, positive_residue_sum,
};
use crate::wall_crossing::quadrature::integrate;
use crate::wall_crossing::{extract_lgcy_matrix, grading_defect, term_match};

/// Environment variable holding the quadrature tolerance.
pub const PRECISION_ENV: &str = "GLSM_PRECISION";

pub const DEFAULT_SEED: u64 = 20_170_301;
pub const DEFAULT_QUAD_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Absolute tolerance of the adaptive quadratures.
    pub quad_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: DEFAULT_SEED,
            quad_tol: DEFAULT_QUAD_TOL,
        }
    }
}

/// Reads `GLSM_PRECISION`. Unset means the default; anything that is not a
/// positive finite number is an error.
pub fn precision_from_env() -> Result<f64, String> {
    match std::env::var(PRECISION_ENV) {
        Err(_) => Ok(DEFAULT_QUAD_TOL),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
            _ => Err(format!("{PRECISION_ENV} must be a positive number, got `{s}`")),
        },
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// The check is expected to fail; see the criterion's note.
    pub known_gap: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub note: Option<&'static str>,
}

impl CriterionReport {
    fn new(id: u8, title: &'static str) -> Self {
        CriterionReport {
            id,
            title,
            checks: Vec::new(),
            note: None,
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
            known_gap: false,
        });
    }

    fn gap(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
            known_gap: true,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Failed, but only on checks marked as known gaps.
    pub fn is_known_gap(&self) -> bool {
        !self.passed() && self.checks.iter().all(|c| c.passed || c.known_gap)
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "PASS"
        } else {
            "FAIL"
        }
    }

    /// The one-line summary.
    pub fn line(&self) -> String {
        let failed: Vec<&str> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        let mut s = format!(
            "{} {:>2} {} ({}/{} checks)",
            self.status(),
            self.id,
            self.title,
            self.checks.len() - failed.len(),
            self.checks.len()
        );
        if !failed.is_empty() {
            s.push_str(&format!(" failed: {}", failed.join(", ")));
            if self.is_known_gap() {
                s.push_str(" [known gap]");
            }
        }
        s
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.line())?;
        for c in &self.checks {
            let tag = if c.passed {
                "ok"
            } else if c.known_gap {
                "GAP"
            } else {
                "BAD"
            };
            writeln!(f, "    [{tag}] {}: {}", c.name, c.detail)?;
        }
        if let (false, Some(n)) = (self.passed(), self.note) {
            writeln!(f, "    note: {n}")?;
        }
        Ok(())
    }
}

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "state-space dimension table"),
    (2, "age table"),
    (3, "Riemann-Roch on P(3,1)"),
    (4, "divisor table"),
    (5, "extended Gamma checks"),
    (6, "digamma constants"),
    (7, "Gamma-ratio vs product form"),
    (8, "leading term"),
    (9, "LG/CY term match"),
    (10, "Mellin-Barnes oracle"),
    (11, "effectiveness and instability"),
];

pub fn run_criterion(id: u8, cfg: &VerifyConfig) -> Option<CriterionReport> {
    Some(match id {
        1 => dimension_table(),
        2 => age_table(),
        3 => riemann_roch(),
        4 => divisor_table(),
        5 => extended_gamma(cfg),
        6 => digamma_constants(cfg),
        7 => gamma_vs_product(),
        8 => leading_term(),
        9 => lgcy_term_match(),
        10 => mellin_barnes(cfg),
        11 => effectiveness(cfg),
        _ => return None,
    })
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<CriterionReport> {
    CRITERIA.iter().filter_map(|&(id, _)| run_criterion(id, cfg)).collect()
}

fn title(id: u8) -> &'static str {
    CRITERIA[usize::from(id) - 1].1
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn rel(a: Complex64, b: Complex64, scale: f64) -> f64 {
    if scale == 0.0 {
        (a - b).norm()
    } else {
        (a - b).norm() / scale
    }
}

fn dimension_table() -> CriterionReport {
    let mut r = CriterionReport::new(1, title(1));
    for theta in Chamber::theta_set() {
        let h = state_basis(&theta).degree_histogram();
        r.check(theta.name(), h == [1, 4, 4, 1], format!("histogram {h:?}"));
    }
    r
}

/// The published table for `θ^a_{xyz}`: exponents `m` of `ζ^m` in
/// `(x, y, z, a)` and the age.
const AGE_TABLE: [([u8; 4], i64); 10] = [
    ([1, 1, 1, 0], 3),
    ([2, 1, 1, 0], 4),
    ([1, 2, 1, 0], 4),
    ([1, 1, 2, 0], 4),
    ([2, 2, 1, 0], 5),
    ([2, 1, 2, 0], 5),
    ([1, 2, 2, 0], 5),
    ([2, 2, 2, 0], 6),
    ([2, 2, 2, 1], 5),
    ([1, 1, 1, 2], 4),
];

fn age_table() -> CriterionReport {
    let mut r = CriterionReport::new(2, title(2));
    let theta = Chamber::parse("---+").expect("valid chamber");
    let mut got: Vec<([u8; 4], Thirds)> = enumerate_sectors(&theta).iter().map(|s| (s.element.0, s.age)).collect();
    let mut want: Vec<([u8; 4], Thirds)> = AGE_TABLE.iter().map(|&(m, a)| (m, Thirds::int(a))).collect();
    got.sort();
    want.sort();
    r.check("row count", got.len() == 10, format!("{} narrow sectors", got.len()));
    let missing: Vec<String> = want
        .iter()
        .filter(|w| !got.contains(w))
        .map(|(m, a)| format!("{} age {a}", SectorLabel(*m).zeta_string()))
        .collect();
    let extra: Vec<String> = got
        .iter()
        .filter(|g| !want.contains(g))
        .map(|(m, a)| format!("{} age {a}", SectorLabel(*m).zeta_string()))
        .collect();
    let detail = if missing.is_empty() && extra.is_empty() {
        "all 10 elements and ages match".to_string()
    } else {
        format!("missing [{}], unexpected [{}]", missing.join("; "), extra.join("; "))
    };
    r.check("elements and ages", got == want, detail);
    r
}

fn riemann_roch() -> CriterionReport {
    let mut r = CriterionReport::new(3, title(3));
    let mut bad = Vec::new();
    let mut count = 0;
    for n in -30..=30i64 {
        let b = BigRational::new(n.into(), 3.into());
        let expect: i64 = (b.floor().to_integer() + 1i64).try_into().expect("small");
        // sections of O(3b) are the monomials x^i y^j with 3i + j = 3b
        let h0 = if n >= 0 {
            (0..=n).filter(|j| (n - j) % 3 == 0).count() as i64
        } else {
            0
        };
        let t = Thirds(n);
        let diff = h0_dim(t) as i64 - h1_dim(t) as i64;
        if diff != expect || h0_dim(t) as i64 != h0 {
            bad.push(t.to_string());
        }
        count += 1;
    }
    r.check(
        "h0 - h1 = floor(b) + 1",
        bad.is_empty(),
        format!("{count} degrees in [-10, 10], mismatches: [{}]", bad.join(", ")),
    );
    r
}

/// `D_ρ` for `θ^{xya}_z`, as coefficients of `(H_x, H_y, H_z)`.
fn published_divisors(rho: Coord) -> [i64; 3] {
    match rho {
        Coord::X0 | Coord::X1 | Coord::X2 => [1, 0, 0],
        Coord::Y0 | Coord::Y1 | Coord::Y2 => [0, 1, 0],
        Coord::Px => [-3, 0, 0],
        Coord::Py => [0, -3, 0],
        Coord::Z0 | Coord::Z1 | Coord::Z2 | Coord::Pz | Coord::A => [0, 0, 0],
    }
}

const PERMUTATIONS: [[Var; 3]; 6] = [
    [Var::X, Var::Y, Var::Z],
    [Var::X, Var::Z, Var::Y],
    [Var::Y, Var::X, Var::Z],
    [Var::Y, Var::Z, Var::X],
    [Var::Z, Var::X, Var::Y],
    [Var::Z, Var::Y, Var::X],
];

fn divisor_table() -> CriterionReport {
    let mut r = CriterionReport::new(4, title(4));
    let base = Chamber::parse("++-+").expect("valid chamber");
    let mut bad = Vec::new();
    for rho in Coord::ALL {
        let d = toric_divisor(rho, &base);
        if d.coeffs != published_divisors(rho) {
            bad.push(format!("D_{} = {d}", rho.name()));
        }
    }
    r.check(
        base.name(),
        bad.is_empty(),
        format!("13 rows, mismatches: [{}]", bad.join(", ")),
    );
    for perm in PERMUTATIONS.iter().skip(1) {
        let theta = base.permuted(*perm);
        let mut bad = Vec::new();
        for rho in Coord::ALL {
            let mut want = [0i64; 3];
            for v in Var::ALL {
                want[perm[v.index()].index()] = published_divisors(rho)[v.index()];
            }
            let d = toric_divisor(rho.permuted(*perm), &theta);
            if d.coeffs != want {
                bad.push(format!("D_{} = {d}", rho.permuted(*perm).name()));
            }
        }
        let name = format!("{} via ({}{}{})", theta.name(), perm[0], perm[1], perm[2]);
        r.check(name, bad.is_empty(), format!("mismatches: [{}]", bad.join(", ")));
    }
    r
}

fn near_pole(z: Complex64) -> bool {
    let k = z.re.round();
    k <= 0.0 && (z - c(k)).norm() < 0.05
}

fn random_point(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let s = Complex64::new(rng.random_range(-4.5..6.0), rng.random_range(-3.0..3.0));
        if !near_pole(s) {
            return s;
        }
    }
}

fn dual_err(a: DualNum, b: DualNum, scale: f64) -> (f64, f64) {
    (rel(a.a, b.a, a.a.norm()), rel(a.b, b.b, scale))
}

fn extended_gamma(cfg: &VerifyConfig) -> CriterionReport {
    const FUNCTIONAL_TOL: f64 = 1e-12;
    const FD_TOL: f64 = 1e-6;
    const STEP: f64 = 1e-5;
    let mut r = CriterionReport::new(5, title(5));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (mut fe, mut fd, mut rfd) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..50 {
        let s = random_point(&mut rng);
        let b = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let (g0, g1) = match (gamma_dual(s, b), gamma_dual(s + 1.0, b)) {
            (Ok(g0), Ok(g1)) => (g0, g1),
            _ => {
                r.check("sample", false, format!("unexpected pole at {s}"));
                continue;
            }
        };
        // Γ(s + 1 + bε) = (s + bε) Γ(s + bε)
        let rhs = DualNum::new(s, b) * g0;
        let (ea, eb) = dual_err(g1, rhs, g1.a.norm() * b.norm() + g1.b.norm());
        fe = fe.max(ea).max(eb);
        let h = c(STEP);
        let deriv = (gamma(s + h) - gamma(s - h)) / (2.0 * STEP);
        fd = fd.max(rel(g0.b, deriv * b, (deriv * b).norm()));
        let rd = rgamma_dual(s, b);
        let rderiv = (gamma(s + h).inv() - gamma(s - h).inv()) / (2.0 * STEP);
        rfd = rfd.max(rel(rd.b, rderiv * b, (rderiv * b).norm()));
    }
    r.check(
        "functional equation",
        fe <= FUNCTIONAL_TOL,
        format!("max rel err {fe:.2e} over 50 points (tol {FUNCTIONAL_TOL:.0e})"),
    );
    r.check(
        "Gamma dual part vs finite difference",
        fd <= FD_TOL,
        format!("max rel err {fd:.2e} (tol {FD_TOL:.0e}, step {STEP:.0e})"),
    );
    r.check(
        "1/Gamma dual part vs finite difference",
        rfd <= FD_TOL,
        format!("max rel err {rfd:.2e} (tol {FD_TOL:.0e})"),
    );
    // Γ(1+α)/Γ(α-k) = (-1)^{k+1} Γ(1-α+k)/Γ(-α)
    let mut refl = 0.0f64;
    for _ in 0..50 {
        let alpha = random_point(&mut rng) * 0.5 + 0.37;
        let k: i32 = rng.random_range(0..=5);
        if [alpha + 1.0, alpha - f64::from(k), -alpha, c(1.0 + f64::from(k)) - alpha]
            .into_iter()
            .any(near_pole)
        {
            continue;
        }
        let lhs = gamma(alpha + 1.0) / gamma(alpha - f64::from(k));
        let sign = if (k + 1) % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = gamma(c(1.0 + f64::from(k)) - alpha) / gamma(-alpha) * sign;
        refl = refl.max(rel(lhs, rhs, rhs.norm()));
    }
    r.check(
        "reflection identity",
        refl <= FUNCTIONAL_TOL,
        format!("max rel err {refl:.2e}"),
    );
    r
}

fn digamma_constants(cfg: &VerifyConfig) -> CriterionReport {
    const TOL: f64 = 1e-12;
    let mut r = CriterionReport::new(6, title(6));
    let closed = PI / (2.0 * 3f64.sqrt()) - 1.5 * 3f64.ln();
    let h1 = h_constant(Thirds(1));
    r.check(
        "h(1/3) closed form",
        (h1 - closed).abs() <= TOL,
        format!("{h1:.15} vs {closed:.15}"),
    );
    let h2 = h_constant(Thirds(2));
    let psi = (digamma(c(1.0 / 3.0)) - digamma(c(1.0))).re;
    r.check(
        "h(2/3) = psi(1/3) - psi(1)",
        (h2 - psi).abs() <= TOL,
        format!("{h2:.15} vs {psi:.15}"),
    );
    for f in [Thirds(0), Thirds(1), Thirds(2)] {
        let num = h_constant_numeric(f);
        // ψ(1-f) - ψ(1) = ∫_0^1 3(u^2 - u^{2-3f})/(1 - u^3) du
        let e = 2.0 - 3.0 * f.to_f64();
        let integral = integrate(
            |u| c(3.0 * (u * u - u.powf(e)) / (1.0 - u * u * u)),
            0.0,
            1.0,
            cfg.quad_tol.min(1e-13),
        );
        let h = h_constant(f);
        match integral {
            Ok((v, _)) => {
                let ok = (h - num).abs() <= TOL && (h - v.re).abs() <= TOL;
                r.check(
                    format!("h({f}) two ways"),
                    ok,
                    format!("closed {h:.15}, digamma {num:.15}, integral {:.15}", v.re),
                );
            }
            Err(e) => r.check(format!("h({f}) two ways"), false, e.to_string()),
        }
    }
    r
}

fn gamma_vs_product() -> CriterionReport {
    const TOL: f64 = 1e-10;
    let mut r = CriterionReport::new(7, title(7));
    for theta in Chamber::all_supported() {
        let mut worst = 0.0f64;
        let mut count = 0;
        let mut failure = None;
        for hbar in [c(1.0), Complex64::new(2.0, 1.0)] {
            for beta in crate::degrees::enumerate_ifunction_degrees(&theta, 3) {
                let prod = i_coefficient(&beta, &theta, &hbar).map(|p| p.scale(&c(givental_sign(&beta) as f64)));
                let gam = givental_gamma_coefficient(&beta, &theta, hbar);
                let (prod, gam) = match (prod, gam) {
                    (Ok(p), Ok(g)) => (p, g),
                    (Err(e), _) | (_, Err(e)) => {
                        failure = Some(format!("{beta}: {e}"));
                        continue;
                    }
                };
                let sectors_agree = prod.parts().map(|p| p.0).eq(gam.parts().map(|p| p.0));
                if !sectors_agree {
                    failure = Some(format!("{beta}: sectors differ"));
                }
                for (s, p) in prod.parts() {
                    let Some(q) = gam.part(s) else { continue };
                    let scale = Monomial::all().map(|m| p.coeff(m).norm()).fold(0.0, f64::max);
                    // scalar and first-order components
                    for m in Monomial::all().filter(|m| m.len() <= 1) {
                        worst = worst.max(rel(*q.coeff(m), *p.coeff(m), scale));
                    }
                }
                count += 1;
            }
        }
        let ok = failure.is_none() && worst <= TOL;
        let detail = failure.unwrap_or_else(|| format!("{count} coefficients, max rel err {worst:.2e}"));
        r.check(theta.name(), ok, detail);
    }
    r
}

fn leading_term() -> CriterionReport {
    let mut r = CriterionReport::new(8, title(8));
    for theta in Chamber::theta_set() {
        for hbar in [BigRational::one(), BigRational::new(5.into(), 3.into())] {
            let name = format!("{} at hbar = {hbar}", theta.name());
            let series = match build_i_series::<BigRational>(&theta, &hbar, 0) {
                Ok(s) => s,
                Err(e) => {
                    r.check(name, false, e.to_string());
                    continue;
                }
            };
            let Some(lead) = series.leading_term() else {
                r.check(name, false, "no leading term");
                continue;
            };
            let reduced = crate::coh_ring::reduce_to_state(&lead.constant_part(), &theta);
            let ok = lead.is_constant() && reduced.as_ref().is_ok_and(|s| *s == unit_class::<BigRational>(&theta));
            let single = lead.constant_part().entries().len() == 1;
            r.check(
                name,
                ok && single,
                if ok && single {
                    "exactly 1_θ".to_string()
                } else {
                    format!("{:?}", lead.constant_part().entries())
                },
            );
        }
    }
    r
}

const CHAIN: [&str; 4] = ["++++", "++-+", "+--+", "---+"];
const MOVES: [Var; 3] = [Var::Z, Var::Y, Var::X];

fn lgcy_term_match() -> CriterionReport {
    const TOL: f64 = 1e-9;
    let mut r = CriterionReport::new(9, title(9));
    r.note = Some(
        "the continuation multiplies by c0 + c1 H_v/hbar, joining basis elements whose shifted degrees differ by 2; \
         the extracted matrices are graded in hbar (deg hbar = 2) but cannot be block diagonal",
    );
    let hbars = [c(1.0), Complex64::new(2.0, 1.0)];
    for (i, &v) in MOVES.iter().enumerate() {
        let from = Chamber::parse(CHAIN[i]).expect("valid chamber");
        let to = Chamber::parse(CHAIN[i + 1]).expect("valid chamber");
        let step = format!("{} -> {}", from.sign_string(), to.sign_string());
        for hbar in hbars {
            match term_match(&from, v, 2, hbar) {
                Ok(t) => {
                    let ok = t.max_rel_err <= TOL && t.excluded_nonzero == 0;
                    let detail = format!(
                        "{} continued terms, max rel err {:.2e}, {} excluded degrees all vanish: {}",
                        t.rows.len(),
                        t.max_rel_err,
                        t.excluded_terms,
                        t.excluded_nonzero == 0
                    );
                    r.check(format!("{step} term match at hbar = {hbar}"), ok, detail);
                }
                Err(e) => r.check(format!("{step} term match at hbar = {hbar}"), false, e.to_string()),
            }
        }
        let mats: Vec<_> = hbars.iter().map(|&h| extract_lgcy_matrix(&from, &to, 2, h)).collect();
        match (&mats[0], &mats[1]) {
            (Ok(a), Ok(b)) => {
                let inv = a.is_invertible() && b.is_invertible();
                r.check(
                    format!("{step} invertible"),
                    inv,
                    format!(
                        "condition numbers {:.3e}, {:.3e}",
                        a.condition_number, b.condition_number
                    ),
                );
                let g = grading_defect(a, b);
                r.check(format!("{step} hbar-graded"), g <= TOL, format!("defect {g:.2e}"));
                let ratio = a.off_block_ratio().max(b.off_block_ratio());
                r.gap(
                    format!("{step} block (1,4,4,1)"),
                    ratio <= TOL,
                    format!("off-block ratio {ratio:.3e}"),
                );
            }
            (Err(e), _) | (_, Err(e)) => r.check(format!("{step} matrix"), false, e.to_string()),
        }
    }
    r
}

fn mellin_barnes(cfg: &VerifyConfig) -> CriterionReport {
    const TOL: f64 = 1e-6;
    const N: usize = 40;
    let mut r = CriterionReport::new(10, title(10));
    r.note = Some(
        "the residue series sum q^n Gamma(1+3n)/(Gamma(1+n-b_a) n!^2) converges only for |q| < 1/27, so its partial \
         sums at q = 5, 1, 10 diverge; the continued side is checked at the same points instead",
    );
    for (q, a) in [(5.0, 0), (1.0, 1), (10.0, 2)] {
        let q = c(q);
        let ba = Thirds(a);
        let name = format!("q = {}, b_a = {ba}", q.re);
        match contour_integral(q, ba.to_f64(), cfg.quad_tol) {
            Ok(ci) => {
                let sum = positive_residue_sum(q, ba.to_f64(), N);
                let d = (ci.value - sum).norm();
                r.gap(
                    format!("{name} partial sum"),
                    d <= TOL,
                    format!("|quadrature - partial sum| = {d:.3e}"),
                );
            }
            Err(e) => r.check(format!("{name} partial sum"), false, e.to_string()),
        }
        match mellin_barnes_continued(q, ba, N, cfg.quad_tol) {
            Ok(m) => {
                let d = m.discrepancy();
                r.check(
                    format!("{name} continued side"),
                    d <= TOL,
                    format!("|quadrature - continued sum| = {d:.3e}"),
                );
            }
            Err(e) => r.check(format!("{name} continued side"), false, e.to_string()),
        }
    }
    for (q, a) in [
        (Complex64::new(0.01, 0.0), 0),
        (Complex64::new(0.005, 0.02), 1),
        (Complex64::new(-0.02, 0.01), 2),
    ] {
        let name = format!("q = {q}, b_a = {} inside the disc", Thirds(a));
        match mellin_barnes_oracle(q, Thirds(a), N, cfg.quad_tol) {
            Ok(m) => r.check(
                name,
                m.discrepancy() <= TOL,
                format!("discrepancy {:.3e}", m.discrepancy()),
            ),
            Err(e) => r.check(name, false, e.to_string()),
        }
    }
    let far = mellin_barnes_oracle(c(30.0), Thirds(0), N, cfg.quad_tol);
    r.check(
        "q = 30 rejected",
        matches!(far, Err(GlsmError::OutOfRegion(_))),
        format!("{:?}", far.map(|m| m.partial_sum)),
    );
    r
}

/// Effectiveness written out from the inequality list with rationals.
fn effective_oracle(beta: &Degree, m: i64, theta: &Chamber) -> bool {
    let q = |t: Thirds| BigRational::new(t.0.into(), 3.into());
    let bound = BigRational::new((m - 2).into(), 3.into());
    if q(beta.a()).is_negative() {
        return false;
    }
    for v in Var::ALL {
        let b = q(beta.get(v));
        let ok = if theta.is_superscript(v) {
            !b.is_negative()
        } else {
            b <= bound
        };
        if !ok {
            return false;
        }
    }
    let mut bt = q(beta.a()) * BigRational::from_integer(3.into());
    for v in Var::ALL {
        let e = if theta.is_superscript(v) { 3 } else { -3 };
        bt += q(beta.get(v)) * BigRational::from_integer(e.into());
    }
    bt += BigRational::from_integer((theta.num_subscript() * (m - 2)).into());
    bt.is_integer() && !bt.is_negative()
}

fn unstable_oracle(beta: &Degree, m: i64, eps: &Epsilon, theta: &Chamber) -> bool {
    // β_0(θ, 2) vanishes in every chamber
    if m == 2 && beta.0.iter().all(|t| *t == Thirds::ZERO) {
        return true;
    }
    if m != 0 && m != 1 {
        return false;
    }
    let mut bt = BigRational::from_integer((beta.a().0 + theta.num_subscript() * (m - 2)).into());
    for v in Var::ALL {
        let e: i64 = if theta.is_superscript(v) { 1 } else { -1 };
        bt += BigRational::from_integer((e * beta.get(v).0).into());
    }
    let rhs = BigRational::from_integer((2 - m).into());
    match eps {
        Epsilon::ZeroPlus => bt.is_positive(),
        Epsilon::Infinity => false,
        Epsilon::Finite(e) => bt * e > rhs,
    }
}

fn epsilons() -> Vec<Epsilon> {
    let r = |n: i64, d: i64| Epsilon::Finite(BigRational::new(n.into(), d.into()));
    vec![Epsilon::ZeroPlus, Epsilon::Infinity, r(1, 3), r(1, 1), r(2, 1), r(5, 2)]
}

fn effectiveness(cfg: &VerifyConfig) -> CriterionReport {
    let mut r = CriterionReport::new(11, title(11));
    let eps = epsilons();
    let mut bad = Vec::new();
    for theta in Chamber::all_supported() {
        let b0 = extremal_degree(&theta, 2);
        for e in &eps {
            if !is_unstable_tuple(&b0, 2, e, &theta) {
                bad.push(format!("{} {e:?}", theta.sign_string()));
            }
        }
    }
    r.check(
        "(b0(θ,2), 2) unstable",
        bad.is_empty(),
        format!("8 chambers x {} values of ε, failures: [{}]", eps.len(), bad.join(", ")),
    );
    let mut bad = Vec::new();
    for theta in Chamber::all_supported() {
        for m in 0..=4 {
            let b0 = extremal_degree(&theta, m);
            if !passes_effectiveness(&b0, m, &theta) || beta_theta(&b0, m, &theta) != 0 {
                bad.push(format!("{} m={m}", theta.sign_string()));
            }
        }
    }
    r.check(
        "extremal degrees effective with b_theta = 0",
        bad.is_empty(),
        format!("8 chambers x m in 0..=4, failures: [{}]", bad.join(", ")),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x11);
    let chambers = Chamber::all_supported();
    let (mut disagree, mut effective, mut unstable) = (Vec::new(), 0, 0);
    for _ in 0..100 {
        let theta = chambers[rng.random_range(0..chambers.len())];
        let m: i64 = rng.random_range(0..=3);
        let beta = Degree(std::array::from_fn(|_| Thirds(rng.random_range(-6..=9))));
        let e = &eps[rng.random_range(0..eps.len())];
        let (got, want) = (
            passes_effectiveness(&beta, m, &theta),
            effective_oracle(&beta, m, &theta),
        );
        let (gu, wu) = (
            is_unstable_tuple(&beta, m, e, &theta),
            unstable_oracle(&beta, m, e, &theta),
        );
        effective += usize::from(want);
        unstable += usize::from(wu);
        if got != want || gu != wu {
            disagree.push(format!("{} {beta} m={m}", theta.sign_string()));
        }
    }
    r.check(
        "100 random points vs inequality list",
        disagree.is_empty(),
        format!(
            "{effective} effective, {unstable} unstable, disagreements: [{}]",
            disagree.join(", ")
        ),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracles_agree_on_extremal_degrees() {
        for theta in Chamber::all_supported() {
            for m in 0..=3 {
                let b = extremal_degree(&theta, m);
                assert!(effective_oracle(&b, m, &theta));
            }
        }
        let theta = Chamber::parse("++-+").unwrap();
        assert!(unstable_oracle(
            &extremal_degree(&theta, 2),
            2,
            &Epsilon::Infinity,
            &theta
        ));
    }

    #[test]
    fn report_line_shape() {
        let mut r = CriterionReport::new(3, "x");
        r.check("a", true, "");
        assert_eq!(r.line(), "PASS  3 x (1/1 checks)");
        r.gap("b", false, "");
        assert!(r.is_known_gap());
        assert_eq!(r.line(), "FAIL  3 x (1/2 checks) failed: b [known gap]");
        r.check("c", false, "");
        assert!(!r.is_known_gap());
    }
}
