use super::spec::AlgebraSpec;
use crate::error::{Error, Result};

/// Finite truncation bounds, all in doubled-index units.
///
/// * `n_eq`: equations (and axiom checks) use sources with `|index| <= n_eq`;
/// * `n_unk`: unknowns exist for sources with `|index| <= n_unk`;
/// * `n_core`: interior reported after projection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub n_eq: i64,
    pub n_unk: i64,
    pub n_core: i64,
}

impl Window {
    pub fn new(n_eq: i64, n_unk: i64, n_core: i64) -> Self {
        Window { n_eq, n_unk, n_core }
    }

    /// A window for checks only: `n_eq` displayed.
    pub fn checks(neq: i64) -> Self {
        Window { n_eq: 2 * neq, n_unk: 2 * neq, n_core: neq }
    }

    /// Smallest admissible `n_unk` for solving at doubled degree `degree`.
    pub fn required_unknown_bound(n_eq: i64, spec: &AlgebraSpec, degree: i64) -> i64 {
        2 * n_eq + spec.max_offset() + degree.abs()
    }

    /// Window with displayed bounds `neq`, `ncore` and the smallest unknown
    /// bound that works for every degree with `|doubled degree| <= max_degree`.
    pub fn for_solving(spec: &AlgebraSpec, neq: i64, ncore: i64, max_degree: i64) -> Self {
        let n_eq = 2 * neq;
        Window { n_eq, n_unk: Self::required_unknown_bound(n_eq, spec, max_degree), n_core: 2 * ncore }
    }

    pub fn is_empty(&self) -> bool {
        self.n_eq < 0
    }

    pub fn validate(&self, spec: &AlgebraSpec, degree: i64) -> Result<()> {
        if self.is_empty() {
            return Ok(());
        }
        let required = Self::required_unknown_bound(self.n_eq, spec, degree);
        if self.n_unk < required {
            return Err(Error::WindowTooSmall { required, actual: self.n_unk });
        }
        if 2 * self.n_core > self.n_eq {
            return Err(Error::InvalidSpec(format!(
                "interior bound {} exceeds half the equation bound {}",
                self.n_core, self.n_eq
            )));
        }
        Ok(())
    }
}
