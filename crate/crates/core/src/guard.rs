//! Size guards for exhaustive computations.
//!
//! Defaults keep every enumeration at desk scale. They can be raised
//! explicitly through `STEINFORGE_GUARD_OVERRIDE`, a comma separated list
//! of `key=value` pairs (for example `max_n_s2=7,max_simplices=20000000`),
//! or the single word `off` to lift all of them.

use thiserror::Error;

pub const OVERRIDE_VAR: &str = "STEINFORGE_GUARD_OVERRIDE";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GuardError {
    #[error("{what} = {value} exceeds guard {bound}")]
    Exceeded { what: &'static str, value: usize, bound: usize },
    #[error("unknown guard `{0}`")]
    UnknownKey(String),
    #[error("guard `{key}` needs a non-negative integer, got `{value}`")]
    BadValue { key: String, value: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Bricks of a covering whose coarsenings are enumerated.
    pub max_bricks: usize,
    /// Largest `s` for exhaustive elementary enumeration.
    pub max_enum_dim: u32,
    /// Largest `t(x)` for which stabilizers are listed.
    pub max_stabilizer_t: u32,
    /// Largest `n` for `Eₙ` when `s = 1, 2, 3`.
    pub max_n: [u32; 3],
    /// Simplices in any constructed complex.
    pub max_simplices: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_bricks: crate::dyadic::DEFAULT_MAX_COARSENING_BRICKS,
            max_enum_dim: crate::dyadic::DEFAULT_MAX_ENUM_DIM,
            max_stabilizer_t: 6,
            max_n: [8, 6, 5],
            max_simplices: crate::complexes::DEFAULT_MAX_SIMPLICES,
        }
    }
}

impl Guards {
    /// Defaults, adjusted by the override variable if it is set.
    pub fn from_env() -> Result<Guards, GuardError> {
        match std::env::var(OVERRIDE_VAR) {
            Ok(spec) => Guards::default().with_overrides(&spec),
            Err(_) => Ok(Guards::default()),
        }
    }

    pub fn unlimited() -> Guards {
        Guards {
            max_bricks: usize::MAX,
            max_enum_dim: u32::MAX,
            max_stabilizer_t: u32::MAX,
            max_n: [u32::MAX; 3],
            max_simplices: usize::MAX,
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Guards, GuardError> {
        let spec = spec.trim();
        if spec.eq_ignore_ascii_case("off") {
            return Ok(Guards::unlimited());
        }
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| GuardError::UnknownKey(item.to_string()))?;
            let (key, value) = (key.trim(), value.trim());
            let v: u64 = value
                .parse()
                .map_err(|_| GuardError::BadValue { key: key.to_string(), value: value.to_string() })?;
            let small = u32::try_from(v).unwrap_or(u32::MAX);
            match key {
                "max_bricks" => self.max_bricks = v as usize,
                "max_enum_dim" => self.max_enum_dim = small,
                "max_stabilizer_t" => self.max_stabilizer_t = small,
                "max_n_s1" => self.max_n[0] = small,
                "max_n_s2" => self.max_n[1] = small,
                "max_n_s3" => self.max_n[2] = small,
                "max_simplices" => self.max_simplices = v as usize,
                _ => return Err(GuardError::UnknownKey(key.to_string())),
            }
        }
        Ok(self)
    }

    /// Bounds for enumerating `Eₙ`.
    pub fn check_mergings(&self, s: u32, n: u32) -> Result<(), GuardError> {
        if s == 0 || s > 3 {
            let bound = if s == 0 { 1 } else { 3 };
            return Err(GuardError::Exceeded { what: "s", value: s as usize, bound });
        }
        let bound = self.max_n[s as usize - 1];
        if n > bound {
            return Err(GuardError::Exceeded { what: "n", value: n as usize, bound: bound as usize });
        }
        Ok(())
    }

    pub fn check(&self, what: &'static str, value: usize, bound: usize) -> Result<(), GuardError> {
        if value > bound {
            return Err(GuardError::Exceeded { what, value, bound });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let g = Guards::default().with_overrides("max_n_s2=7, max_simplices=10").unwrap();
        assert_eq!(g.max_n, [8, 7, 5]);
        assert_eq!(g.max_simplices, 10);
        assert_eq!(Guards::default().with_overrides("off").unwrap(), Guards::unlimited());
        assert!(Guards::default().with_overrides("nosuch=1").is_err());
        assert!(Guards::default().with_overrides("max_bricks=x").is_err());
    }

    #[test]
    fn merging_bounds() {
        let g = Guards::default();
        assert!(g.check_mergings(2, 6).is_ok());
        assert!(g.check_mergings(3, 6).is_err());
        assert!(g.check_mergings(3, 7).is_err());
        assert!(g.check_mergings(1, 8).is_ok());
        assert!(g.check_mergings(4, 2).is_err());
    }
}
