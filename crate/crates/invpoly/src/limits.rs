//! Oracle resource bounds, overridable through `INVPOLY_LIMITS`.
//!
//! Format: comma-separated `key=value` pairs, e.g.
//! `max_monomials=500000,max_socle=10000`. Unset keys keep their defaults.

use invpoly_core::MilnorLimits;
use thiserror::Error;

pub const ENV_VAR: &str = "INVPOLY_LIMITS";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitsError {
    #[error("{ENV_VAR}: expected key=value, got {0:?}")]
    Syntax(String),
    #[error("{ENV_VAR}: unknown key {0:?} (known: max_monomials, max_socle)")]
    UnknownKey(String),
    #[error("{ENV_VAR}: {key} must be a positive integer, got {value:?}")]
    BadValue { key: String, value: String },
}

pub fn parse_limits(spec: &str) -> Result<MilnorLimits, LimitsError> {
    let mut limits = MilnorLimits::default();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part.split_once('=').ok_or_else(|| LimitsError::Syntax(part.to_string()))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = || LimitsError::BadValue { key: key.to_string(), value: value.to_string() };
        let n: u64 = value.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        match key {
            "max_monomials" => limits.max_monomials = usize::try_from(n).map_err(|_| bad())?,
            "max_socle" => limits.max_socle = n,
            _ => return Err(LimitsError::UnknownKey(key.to_string())),
        }
    }
    Ok(limits)
}

/// Defaults, overridden by the environment when set.
pub fn limits_from_env() -> Result<MilnorLimits, LimitsError> {
    match std::env::var(ENV_VAR) {
        Ok(s) => parse_limits(&s),
        Err(_) => Ok(MilnorLimits::default()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_overrides() {
        assert_eq!(parse_limits("").unwrap(), MilnorLimits::default());
        let l = parse_limits("max_socle=10, max_monomials = 99").unwrap();
        assert_eq!(l, MilnorLimits { max_monomials: 99, max_socle: 10 });
        let l = parse_limits("max_socle=7").unwrap();
        assert_eq!(l.max_monomials, MilnorLimits::default().max_monomials);
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_limits("max_socle"), Err(LimitsError::Syntax(_))));
        assert!(matches!(parse_limits("socle=3"), Err(LimitsError::UnknownKey(_))));
        assert!(matches!(parse_limits("max_socle=-3"), Err(LimitsError::BadValue { .. })));
        assert!(matches!(parse_limits("max_socle=0"), Err(LimitsError::BadValue { .. })));
    }
}
