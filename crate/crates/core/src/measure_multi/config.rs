use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Lawton specialization parameters `n` and the cap on the degree of each
/// specialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawtonSchedule {
    pub n_values: Vec<u64>,
    pub degree_cap: u64,
}

impl LawtonSchedule {
    pub fn new(n_values: Vec<u64>, degree_cap: u64) -> Result<Self> {
        let s = LawtonSchedule { n_values, degree_cap };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(Error::InvalidArgument("schedule is empty".into()));
        }
        if self.n_values[0] == 0 {
            return Err(Error::InvalidArgument("schedule entries must be positive".into()));
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("schedule must be strictly increasing".into()));
        }
        if self.degree_cap == 0 {
            return Err(Error::InvalidArgument("degree cap must be positive".into()));
        }
        Ok(())
    }
}

impl Default for LawtonSchedule {
    fn default() -> Self {
        LawtonSchedule {
            n_values: vec![5, 9, 13, 17, 25, 37],
            degree_cap: 6000,
        }
    }
}

/// Every knob of the estimators; echoed in each result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MeasureConfig {
    pub schedule: LawtonSchedule,
    /// Outer quadrature nodes for the two-variable Jensen estimator.
    pub nodes: usize,
    /// Points per shift for the quasi-Monte Carlo estimator.
    pub samples: usize,
    pub seed: u64,
    /// Tolerance for merging measure values in spectrum samples.
    pub tolerance: f64,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        MeasureConfig {
            schedule: LawtonSchedule::default(),
            nodes: 2048,
            samples: 65536,
            seed: 0,
            tolerance: 1e-7,
        }
    }
}

impl MeasureConfig {
    pub fn validate(&self) -> Result<()> {
        self.schedule.validate()?;
        if self.nodes < 2 {
            return Err(Error::InvalidArgument("need at least 2 quadrature nodes".into()));
        }
        if self.samples == 0 {
            return Err(Error::InvalidArgument("sample count must be positive".into()));
        }
        if !(self.tolerance.is_finite() && self.tolerance >= 0.0) {
            return Err(Error::InvalidArgument("tolerance must be a nonnegative number".into()));
        }
        Ok(())
    }
}
