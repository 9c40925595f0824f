//! Run configuration and argument parsing helpers.

use anyhow::{anyhow, bail, Result};
use glsm_core::thirds::{floor_i64, parse_rational};
use glsm_core::{BigRational, Chamber, Complex64};
use num_traits::ToPrimitive;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// `ℏ` as given on the command line. Real rational input keeps the exact value.
#[derive(Clone, Debug, PartialEq)]
pub enum Hbar {
    Exact(BigRational),
    Complex(Complex64),
}

impl Hbar {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Hbar::Exact(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            Hbar::Complex(z) => *z,
        }
    }
}

/// Everything a command needs, validated.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub chambers: Vec<Chamber>,
    pub cutoff: i64,
    pub hbar: Hbar,
    pub format: Format,
    pub eval: Option<[Complex64; 4]>,
    pub seed: u64,
}

pub fn parse_chamber(s: &str) -> Result<Chamber> {
    Ok(Chamber::parse(s)?)
}

/// Cutoff as a rational string; `β_ϑ` is an integer so the floor is used.
pub fn parse_cutoff(s: &str) -> Result<i64> {
    let r = parse_rational(s)?;
    if r < BigRational::from_integer(0.into()) {
        bail!("cutoff must be nonnegative, got {s}");
    }
    Ok(floor_i64(&r))
}

fn parse_real(s: &str) -> Result<f64> {
    if let Ok(r) = parse_rational(s) {
        return r.to_f64().ok_or_else(|| anyhow!("{s} out of range"));
    }
    s.parse::<f64>().map_err(|_| anyhow!("malformed number `{s}`"))
}

/// Parses `a`, `bi`, `a+bi` or `a-bi`, with `i` alone meaning `1i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .replace('\u{2212}', "-");
    if t.is_empty() {
        bail!("empty complex number");
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(parse_real(&t)?, 0.0));
    };
    // split before the last sign that is not an exponent sign or the leading sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => parse_real(x)?,
    };
    Ok(Complex64::new(parse_real(re)?, im))
}

pub fn parse_hbar(s: &str) -> Result<Hbar> {
    let h = match parse_rational(s) {
        Ok(r) => Hbar::Exact(r),
        Err(_) => Hbar::Complex(parse_complex(s)?),
    };
    if h.to_complex().norm() == 0.0 {
        bail!("hbar must be nonzero");
    }
    Ok(h)
}

/// Four comma-separated complex numbers `q_x,q_y,q_z,q_a`.
pub fn parse_point(s: &str) -> Result<[Complex64; 4]> {
    let parts = s.split(',').map(parse_complex).collect::<Result<Vec<_>>>()?;
    parts
        .try_into()
        .map_err(|_| anyhow!("expected four values q_x,q_y,q_z,q_a, got `{s}`"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("2+i").unwrap(), Complex64::new(2.0, 1.0));
        assert_eq!(parse_complex("2 - 3.5i").unwrap(), Complex64::new(2.0, -3.5));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("1e-3+2e+1i").unwrap(), Complex64::new(1e-3, 20.0));
        assert_eq!(parse_complex("1/3").unwrap(), Complex64::new(1.0 / 3.0, 0.0));
        assert!(parse_complex("2+").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn hbar_and_cutoff() {
        assert_eq!(
            parse_hbar("1").unwrap(),
            Hbar::Exact(BigRational::from_integer(1.into()))
        );
        assert!(matches!(parse_hbar("2+i").unwrap(), Hbar::Complex(_)));
        assert!(parse_hbar("0").is_err());
        assert!(parse_hbar("0+0i").is_err());
        assert_eq!(parse_cutoff("5/2").unwrap(), 2);
        assert!(parse_cutoff("-1").is_err());
        assert_eq!(parse_point("1,2,3,4+i").unwrap()[3], Complex64::new(4.0, 1.0));
        assert!(parse_point("1,2").is_err());
    }
}
