use serde::{Deserialize, Serialize, Serializer};

use crate::numfmt::round_sig;

/// Significant digits kept for reals in the JSON certificate.
const JSON_DIGITS: usize = 15;

/// Machine-readable outcome of [`verify_minimizer`](super::verify_minimizer).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub entry_name: String,
    #[serde(serialize_with = "ser_real")]
    pub orthogonality_max_residual: f64,
    #[serde(serialize_with = "ser_real")]
    pub density_max_rel_error: f64,
    #[serde(serialize_with = "ser_real")]
    pub bound: f64,
    #[serde(serialize_with = "ser_real")]
    pub minimizer_length: f64,
    /// Competitor weighted length minus `bound`, in competitor order.
    #[serde(serialize_with = "ser_reals")]
    pub competitor_margins: Vec<f64>,
    pub passed: bool,
    pub seed: u64,
    pub n_samples: usize,
    pub n_competitors: usize,
}

fn ser_real<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x, JSON_DIGITS))
}

fn ser_reals<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| round_sig(*x, JSON_DIGITS)))
}

impl VerificationReport {
    /// Pretty JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        // serde_json's Map is a BTreeMap here, so going through Value sorts keys.
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn min_margin(&self) -> Option<f64> {
        self.competitor_margins.iter().copied().reduce(f64::min)
    }
}
