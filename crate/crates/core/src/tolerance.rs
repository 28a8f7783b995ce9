use crate::error::{Error, Result};

/// Name of the environment variable overriding [`Tolerance::default`].
/// Format: `<verify>[,<cell>]`, e.g. `1e-7,1e-8`.
pub const TOL_ENV: &str = "F4DECOMP_TOL";

/// The tolerance pair used throughout: `verify` bounds automorphism and
/// reconstruction residuals, `cell` bounds the scale-relative pairing
/// below which an element counts as lying on a degenerate (closed) cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub verify: f64,
    pub cell: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { verify: 1e-8, cell: 1e-9 }
    }
}

impl Tolerance {
    pub fn parse(spec: &str) -> Result<Self> {
        let mut parts = spec.split(',').map(str::trim);
        let parse = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite() && *v > 0.0)
                .ok_or_else(|| Error::invalid(format!("bad tolerance `{s}` in {TOL_ENV}")))
        };
        let verify = parse(parts.next().unwrap_or(""))?;
        let cell = match parts.next() {
            Some(s) => parse(s)?,
            None => verify * 0.1,
        };
        if parts.next().is_some() {
            return Err(Error::invalid(format!("{TOL_ENV} takes at most two values")));
        }
        Ok(Tolerance { verify, cell })
    }

    /// Reads [`TOL_ENV`], falling back to the defaults when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(TOL_ENV) {
            Ok(s) if !s.trim().is_empty() => Tolerance::parse(&s),
            _ => Ok(Tolerance::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_pair_and_single() {
        assert_eq!(Tolerance::parse("1e-7,1e-8").unwrap(), Tolerance { verify: 1e-7, cell: 1e-8 });
        let t = Tolerance::parse("1e-6").unwrap();
        assert_eq!(t.verify, 1e-6);
        assert!((t.cell - 1e-7).abs() < 1e-20);
        assert!(Tolerance::parse("abc").is_err());
        assert!(Tolerance::parse("-1").is_err());
        assert!(Tolerance::parse("1,2,3").is_err());
    }
}
