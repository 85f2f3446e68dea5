use crate::lattice::IntMatrix;
use crate::measure_multi::MeasureConfig;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Roots,
    Lawton,
    Jensen2d,
    Qmc,
    /// Coefficient bounds coincide (a monomial or a constant).
    BoundsForced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Precision {
    Double,
    DoubleDouble,
}

/// Outcome of the measure-zero test attached to a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroTest {
    /// Proven zero by the gap below `log 2 / (2 length)`; value snapped to 0.
    CertifiedZero,
    /// Proven positive.
    CertifiedNonzero,
    /// Zero on the largest specializations; not a proof.
    HeuristicZero,
}

/// One Lawton specialization: `n`, the univariate degree, and its measure.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TracePoint {
    pub n: u64,
    pub degree: usize,
    pub estimate: f64,
    pub error_bound: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Detail {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<Precision>,
    /// Root-squaring bracket `[lower, upper]` for the same value.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graeffe_bracket: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TracePoint>,
    /// Schedule entries dropped (zero specialization or over the degree cap).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped_n: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lawton_cross_check: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Quadrature nodes or sample points skipped because `F` vanished there.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_test: Option<ZeroTest>,
    /// The saturated form `H` actually substituted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<IntMatrix>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// A logarithmic Mahler measure with its error estimate and provenance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureResult {
    pub value: f64,
    pub error_bound: f64,
    pub method: Method,
    pub detail: Detail,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<MeasureConfig>,
}

impl MeasureResult {
    pub fn new(value: f64, error_bound: f64, method: Method) -> Self {
        MeasureResult {
            value,
            error_bound,
            method,
            detail: Detail::default(),
            config: None,
        }
    }

    /// `[value - error_bound, value + error_bound]`
    pub fn interval(&self) -> (f64, f64) {
        (self.value - self.error_bound, self.value + self.error_bound)
    }
}
