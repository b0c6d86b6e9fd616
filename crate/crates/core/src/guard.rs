//! Size limits that keep exhaustive computations at desk scale.

use crate::error::{Error, Result};
use crate::lattice::ArrangementSpec;

pub const MAX_CELLS_ENV: &str = "CYCLIC_WONDERFUL_MAX_CELLS";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Bound on `(1+r)^n - 1` for the quotient-ring oracle.
    pub max_oracle_generators: u128,
    /// Bound on `n! r^n` when materializing a fan.
    pub max_fan_cells: u128,
    /// Largest `n` for normal-complex vertex enumeration.
    pub max_normal_n: usize,
    /// When set, replaces the `n` bound by a bound on the number of cells.
    pub max_normal_cells: Option<u128>,
}

impl Default for Guards {
    fn default() -> Self {
        Self {
            max_oracle_generators: 1_000,
            max_fan_cells: 50_000,
            max_normal_n: 3,
            max_normal_cells: None,
        }
    }
}

impl Guards {
    /// Every bound replaced by `cells`.
    pub fn uniform(cells: u128) -> Self {
        Self {
            max_oracle_generators: cells,
            max_fan_cells: cells,
            max_normal_n: usize::MAX,
            max_normal_cells: Some(cells),
        }
    }

    /// Defaults, or [`Guards::uniform`] when the override variable is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_CELLS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(Self::uniform)
                .map_err(|_| Error::Parse(format!("{MAX_CELLS_ENV}={v} is not a nonnegative integer"))),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn check_fan(&self, spec: &ArrangementSpec) -> Result<()> {
        let cells = spec.maximal_chain_count();
        if cells > self.max_fan_cells {
            return Err(Error::Feasibility {
                what: "number of maximal cones n! r^n",
                value: cells.to_string(),
                bound: self.max_fan_cells,
            });
        }
        Ok(())
    }

    pub fn check_normal(&self, spec: &ArrangementSpec) -> Result<()> {
        match self.max_normal_cells {
            Some(bound) => {
                let cells = spec.maximal_chain_count();
                if cells > bound {
                    return Err(Error::Feasibility {
                        what: "number of normal-complex cells n! r^n",
                        value: cells.to_string(),
                        bound,
                    });
                }
            }
            None if spec.n() > self.max_normal_n => {
                return Err(Error::Feasibility {
                    what: "n for normal-complex vertex enumeration",
                    value: spec.n().to_string(),
                    bound: self.max_normal_n as u128,
                });
            }
            None => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_bounds() {
        let g = Guards::default();
        assert!(g.check_fan(&ArrangementSpec::new(4, 3).unwrap()).is_ok());
        assert!(g.check_fan(&ArrangementSpec::new(9, 5).unwrap()).is_err());
        assert!(g.check_normal(&ArrangementSpec::new(2, 3).unwrap()).is_ok());
        assert!(g.check_normal(&ArrangementSpec::new(2, 4).unwrap()).is_err());
    }

    #[test]
    fn uniform_override() {
        let g = Guards::uniform(10);
        assert!(g.check_normal(&ArrangementSpec::new(2, 2).unwrap()).is_ok());
        assert!(g.check_normal(&ArrangementSpec::new(3, 2).unwrap()).is_err());
    }
}
