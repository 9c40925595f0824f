//! The subcommands. Each returns its complete output as a string so the
//! binary and the tests share one code path.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use glsm_core::json::{complex_json, series_to_json, state_class_to_json, CoeffJson};
use glsm_core::state_space::enumerate_sectors;
use glsm_core::verify::{run_criterion, CriterionReport, VerifyConfig, CRITERIA};
use glsm_core::{
    beta_theta, build_givental, build_i_series, evaluate, extract_lgcy_matrix, extremal_degree, is_unstable_tuple,
    passes_effectiveness, state_basis, term_match, toric_divisor, unstable_components, BigRational, Chamber, Coord,
    Degree, Epsilon, ISeries, Scalar,
};
use serde_json::{json, Value};

use crate::config::{Format, Hbar, RunConfig};

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn all_patterns() -> Vec<String> {
    (0..16u8)
        .map(|bits| (0..4).map(|i| if bits & (8 >> i) == 0 { '+' } else { '-' }).collect())
        .collect()
}

/// The representative in `Θ` with the same number of subscript variables.
fn theta_representative(theta: &Chamber) -> Chamber {
    Chamber::theta_set()[theta.num_subscript() as usize]
}

pub fn chambers(format: Format) -> Result<String> {
    let rows: Vec<(String, &'static str, String)> = all_patterns()
        .into_iter()
        .map(|p| match Chamber::parse(&p) {
            Ok(t) if Chamber::theta_set().contains(&t) => (p, "Θ", t.name()),
            Ok(t) => (
                p,
                "image",
                format!("{} ≅ {}", t.name(), theta_representative(&t).name()),
            ),
            Err(_) => (p, "unsupported", "a subscript".to_string()),
        })
        .collect();
    match format {
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(p, s, n)| json!({"signs": p, "status": s, "name": n}))
                .collect();
            Ok(pretty(
                &json!({"chambers": v, "supported": Chamber::theta_set().map(|t| t.sign_string())}),
            ))
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "{:<6} {:<12} name", "signs", "status")?;
            for (p, s, n) in &rows {
                writeln!(out, "{p:<6} {s:<12} {n}")?;
            }
            writeln!(
                out,
                "{} chambers, {} supported up to permutation",
                rows.len(),
                rows.iter().filter(|r| r.1 == "Θ").count()
            )?;
            Ok(out)
        }
    }
}

pub fn chamber_detail(theta: &Chamber, format: Format) -> Result<String> {
    let loci: Vec<String> = unstable_components(theta).iter().map(|c| c.to_string()).collect();
    let divisors: Vec<(&str, String)> = Coord::ALL
        .iter()
        .map(|&c| (c.name(), toric_divisor(c, theta).to_string()))
        .collect();
    match format {
        Format::Json => {
            let d: Vec<Value> = divisors
                .iter()
                .map(|(c, d)| json!({"coord": c, "divisor": d}))
                .collect();
            Ok(pretty(&json!({
                "chamber": theta.to_json(),
                "name": theta.name(),
                "unstable_locus": loci,
                "divisors": d,
            })))
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(
                out,
                "{} {}  exponents {:?}",
                theta.sign_string(),
                theta.name(),
                theta.exponents()
            )?;
            writeln!(out, "unstable locus: {}", loci.join(" ∪ "))?;
            writeln!(out, "divisors:")?;
            for (c, d) in &divisors {
                writeln!(out, "  D_{c:<3} = {d}")?;
            }
            Ok(out)
        }
    }
}

pub fn statespace(theta: &Chamber, format: Format) -> Result<String> {
    let basis = state_basis(theta);
    let sectors = enumerate_sectors(theta);
    let hist = basis.degree_histogram();
    match format {
        Format::Json => {
            let elements: Vec<Value> = basis
                .elements
                .iter()
                .map(|e| {
                    json!({
                        "label": e.label(theta),
                        "sector": e.sector.json_strings(),
                        "monomial": e.monomial.json_names(),
                        "degree": e.degree,
                    })
                })
                .collect();
            let secs: Vec<Value> = sectors
                .iter()
                .map(|s| json!({"element": s.element.zeta_string(), "age": s.age.to_string(), "locus": s.locus_description()}))
                .collect();
            Ok(pretty(
                &json!({"chamber": theta.to_json(), "basis": elements, "sectors": secs, "histogram": hist}),
            ))
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "{} {}", theta.sign_string(), theta.name())?;
            writeln!(
                out,
                "{:>2}  {:<20} {:<16} {:>6}",
                "#", "basis element", "sector", "degree"
            )?;
            for (i, e) in basis.elements.iter().enumerate() {
                writeln!(
                    out,
                    "{:>2}  {:<20} {:<16} {:>6}",
                    i,
                    e.label(theta),
                    e.sector.zeta_string(),
                    e.degree
                )?;
            }
            writeln!(
                out,
                "histogram (deg 0,2,4,6): ({},{},{},{})",
                hist[0], hist[1], hist[2], hist[3]
            )?;
            Ok(out)
        }
    }
}

pub struct DegreeQuery {
    pub beta: Degree,
    pub m: i64,
    pub eps: Epsilon,
}

pub fn degrees(theta: &Chamber, cutoff: i64, query: Option<&DegreeQuery>, format: Format) -> Result<String> {
    if let Some(q) = query {
        let eff = passes_effectiveness(&q.beta, q.m, theta);
        let unst = is_unstable_tuple(&q.beta, q.m, &q.eps, theta);
        let bt = beta_theta(&q.beta, q.m, theta);
        return Ok(match format {
            Format::Json => pretty(&json!({
                "beta": q.beta.strings(), "m": q.m, "beta_theta": bt, "effective": eff, "unstable": unst,
            })),
            Format::Text => format!(
                "beta {} m {}: beta_theta {bt}, effective {eff}, unstable {unst}\n",
                q.beta, q.m
            ),
        });
    }
    let shift = extremal_degree(theta, 1);
    let list = glsm_core::enumerate_ifunction_degrees(theta, cutoff);
    match format {
        Format::Json => {
            let v: Vec<Value> = list
                .iter()
                .map(|b| json!({"beta": b.strings(), "exponent": b.sub(&shift).strings(), "beta_theta": beta_theta(b, 1, theta)}))
                .collect();
            Ok(pretty(
                &json!({"chamber": theta.to_json(), "cutoff": cutoff, "degrees": v}),
            ))
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "{:<22} {:<22} {:>10}", "beta", "q exponent", "beta_theta")?;
            for b in &list {
                writeln!(
                    out,
                    "{:<22} {:<22} {:>10}",
                    b.to_string(),
                    b.sub(&shift).to_string(),
                    beta_theta(b, 1, theta)
                )?;
            }
            writeln!(out, "{} degrees with beta_theta <= {cutoff}", list.len())?;
            Ok(out)
        }
    }
}

fn series_output<C: CoeffJson>(s: &ISeries<C>, cfg: &RunConfig) -> Result<String> {
    let value = match cfg.eval {
        Some(q) => Some(evaluate(s, q)?),
        None => None,
    };
    match cfg.format {
        Format::Json => {
            let mut v = series_to_json(s);
            if let Some(val) = &value {
                v["value"] = state_class_to_json(val);
            }
            Ok(pretty(&v))
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(
                out,
                "{} {} series of {}, cutoff {}",
                s.kind.name(),
                s.len(),
                s.chamber.name(),
                s.cutoff
            )?;
            for (e, p) in s.ordered_terms() {
                for (l, c) in &p.terms {
                    let logs: String = l.vars().iter().map(|v| format!(" L{v}")).collect();
                    for (sector, m, a) in c.entries() {
                        let mono: String = m.vars().iter().map(|v| format!("H{v}")).collect();
                        writeln!(
                            out,
                            "q^{e}{logs}  {}  {}  {}",
                            sector.zeta_string(),
                            if mono.is_empty() { "1".into() } else { mono },
                            a.to_json()
                        )?;
                    }
                }
            }
            if let Some(val) = &value {
                writeln!(out, "value: {}", state_class_to_json(val))?;
            }
            Ok(out)
        }
    }
}

fn build<C: Scalar>(theta: &Chamber, h: &C, cutoff: i64, givental: bool) -> glsm_core::Result<ISeries<C>> {
    if givental {
        build_givental(theta, h, cutoff)
    } else {
        build_i_series(theta, h, cutoff)
    }
}

pub fn ifunction(cfg: &RunConfig, givental: bool) -> Result<String> {
    let theta = cfg.chambers[0];
    match &cfg.hbar {
        Hbar::Exact(r) => series_output(&build::<BigRational>(&theta, r, cfg.cutoff, givental)?, cfg),
        Hbar::Complex(z) => series_output(&build(&theta, z, cfg.cutoff, givental)?, cfg),
    }
}

fn fmt_complex(z: glsm_core::Complex64) -> String {
    format!("{:+.6e}{:+.6e}i", z.re, z.im)
}

pub fn wallcross(cfg: &RunConfig) -> Result<String> {
    let (from, to) = (cfg.chambers[0], cfg.chambers[1]);
    let hbar = cfg.hbar.to_complex();
    let matrix = extract_lgcy_matrix(&from, &to, cfg.cutoff, hbar)?;
    let moves = from.differing_vars(&to);
    // term matching runs in the direction that moves a superscript variable
    let report = match moves.as_slice() {
        [v] if from.is_superscript(*v) => Some(term_match(&from, *v, cfg.cutoff, hbar)?),
        [v] => Some(term_match(&to, *v, cfg.cutoff, hbar)?),
        _ => None,
    };
    let rows: Vec<Vec<Value>> = matrix
        .rows()
        .iter()
        .map(|r| r.iter().map(|z| complex_json(*z)).collect())
        .collect();
    let max_err = report.as_ref().map_or(0.0, |r| r.max_rel_err);
    match cfg.format {
        Format::Json => {
            let terms: Vec<Value> = report
                .iter()
                .flat_map(|r| &r.rows)
                .map(|t| {
                    json!({
                        "degree": t.degree.strings(),
                        "Lpowers": t.lpowers.vars().iter().map(|v| format!("L{v}")).collect::<Vec<_>>(),
                        "continued": state_class_to_json(&t.continued),
                        "direct": state_class_to_json(&t.direct),
                        "rel_err": t.rel_err,
                    })
                })
                .collect();
            Ok(pretty(&json!({
                "from": from.to_json(),
                "to": to.to_json(),
                "hbar": complex_json(hbar),
                "cutoff": cfg.cutoff,
                "terms": terms,
                "matrix": rows,
                "condition_number": matrix.condition_number,
                "max_rel_err": max_err,
            })))
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(
                out,
                "{} -> {} at hbar = {}, cutoff {}",
                from.name(),
                to.name(),
                fmt_complex(hbar),
                cfg.cutoff
            )?;
            if let Some(r) = &report {
                writeln!(out, "term match {} -> {}:", r.from.sign_string(), r.to.sign_string())?;
                writeln!(out, "  {:<22} {:<6} {:>12}", "degree", "logs", "rel err")?;
                for t in &r.rows {
                    let logs: String = t.lpowers.vars().iter().map(|v| format!("L{v}")).collect();
                    let logs = if logs.is_empty() { "-".to_string() } else { logs };
                    writeln!(out, "  {:<22} {:<6} {:>12.3e}", t.degree.to_string(), logs, t.rel_err)?;
                }
                writeln!(
                    out,
                    "  {} continued terms, {} direct terms, {} excluded (vanishing: {})",
                    r.continued_terms,
                    r.direct_terms,
                    r.excluded_terms,
                    r.excluded_nonzero == 0
                )?;
            }
            writeln!(out, "matrix: {}", serde_json::to_string(&rows)?)?;
            writeln!(out, "condition number: {:.6e}", matrix.condition_number)?;
            writeln!(out, "max relative error: {max_err:.3e}")?;
            Ok(out)
        }
    }
}

pub struct VerifyOutcome {
    pub output: String,
    pub passed: bool,
}

pub fn verify(ids: &[u8], cfg: &VerifyConfig, verbose: bool, format: Format) -> Result<VerifyOutcome> {
    let ids: Vec<u8> = if ids.is_empty() {
        CRITERIA.iter().map(|c| c.0).collect()
    } else {
        ids.to_vec()
    };
    let mut reports: Vec<CriterionReport> = Vec::new();
    for id in ids {
        match run_criterion(id, cfg) {
            Some(r) => reports.push(r),
            None => bail!("no acceptance criterion {id} (expected 1..={})", CRITERIA.len()),
        }
    }
    let passed = reports.iter().all(|r| r.passed());
    let output = match format {
        Format::Json => {
            let v: Vec<Value> = reports
                .iter()
                .map(|r| {
                    let checks: Vec<Value> = r
                        .checks
                        .iter()
                        .map(|c| json!({"name": c.name, "passed": c.passed, "known_gap": c.known_gap, "detail": c.detail}))
                        .collect();
                    json!({"id": r.id, "title": r.title, "passed": r.passed(), "known_gap": r.is_known_gap(), "checks": checks, "note": r.note})
                })
                .collect();
            pretty(&json!({"seed": cfg.seed, "quad_tol": cfg.quad_tol, "passed": passed, "criteria": v}))
        }
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                if verbose || !r.passed() {
                    write!(out, "{r}")?;
                } else {
                    writeln!(out, "{}", r.line())?;
                }
            }
            let n = reports.iter().filter(|r| r.passed()).count();
            writeln!(
                out,
                "{n}/{} criteria passed (seed {}, quadrature tolerance {:e})",
                reports.len(),
                cfg.seed,
                cfg.quad_tol
            )?;
            out
        }
    };
    Ok(VerifyOutcome { output, passed })
}
