//! Multivariate Mahler measures: Lawton specialization, the iterated
//! Jensen formula in two variables, quasi-Monte Carlo, and the dispatch
//! for `m(F_A)` through the saturated Hermite form of `A`.

mod config;
mod content;
mod dispatch;
mod jensen;
mod lawton;
mod qmc;

pub use config::{LawtonSchedule, MeasureConfig};
pub use dispatch::measure_of_family_member;
pub use jensen::jensen_2d;
pub use lawton::lawton_estimate;
pub use qmc::{qmc_estimate, QMC_BLOCKS, QMC_COVERAGE, QMC_MAX_SKIP_FRACTION};
