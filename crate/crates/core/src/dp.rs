//! Differentially private token selection.
//!
//! Raw model logits are clipped to a fixed range and normalized to
//! [0, 1], which forces the utility-score sensitivity to 1. Sampling a
//! token with probability proportional to `exp(u / T)` then realizes
//! the Exponential Mechanism with a per-token budget of
//! `epsilon = 2 * sensitivity / T`.
//!
//! Sampling draws from the full vocabulary by exact cumulative inverse
//! sampling; any top-k/top-p truncation would change the mechanism's
//! distribution. Probabilities are computed with max-subtracted
//! exponentials so small temperatures cannot overflow.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{GenerationLimits, GenerativeModel};

/// Clipping range for raw model logits, in raw logit units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClipBounds {
    pub logit_min: f64,
    pub logit_max: f64,
}

impl ClipBounds {
    /// Shipped default, measured for the reference infilling model.
    pub const DEFAULT_LOGIT_MIN: f64 = -95.0;
    pub const DEFAULT_LOGIT_MAX: f64 = 8.0;

    pub fn new(logit_min: f64, logit_max: f64) -> Result<Self> {
        if !logit_min.is_finite() || !logit_max.is_finite() {
            return Err(Error::invalid("clip bounds must be finite"));
        }
        if logit_min >= logit_max {
            return Err(Error::invalid(format!(
                "clip bounds require logit_min < logit_max, got ({logit_min}, {logit_max})"
            )));
        }
        Ok(ClipBounds { logit_min, logit_max })
    }

    pub fn width(&self) -> f64 {
        self.logit_max - self.logit_min
    }
}

impl Default for ClipBounds {
    fn default() -> Self {
        ClipBounds {
            logit_min: Self::DEFAULT_LOGIT_MIN,
            logit_max: Self::DEFAULT_LOGIT_MAX,
        }
    }
}

/// Per-token privacy parameters. `temperature` is derived so that
/// `temperature == 2 * sensitivity / epsilon_per_token` holds exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrivacySpec {
    pub epsilon_per_token: f64,
    pub sensitivity: f64,
    pub temperature: f64,
}

impl PrivacySpec {
    pub fn from_epsilon(epsilon_per_token: f64, sensitivity: f64) -> Result<Self> {
        let temperature = temperature_from_epsilon(epsilon_per_token, sensitivity)?;
        Ok(PrivacySpec { epsilon_per_token, sensitivity, temperature })
    }

    pub fn from_temperature(temperature: f64, sensitivity: f64) -> Result<Self> {
        let epsilon_per_token = epsilon_from_temperature(temperature, sensitivity)?;
        Ok(PrivacySpec { epsilon_per_token, sensitivity, temperature })
    }
}

fn check_positive(value: f64, name: &str) -> Result<()> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::invalid(format!(
            "{name} must be a positive finite number, got {value}"
        )));
    }
    Ok(())
}

/// T = 2 * sensitivity / epsilon.
pub fn temperature_from_epsilon(epsilon: f64, sensitivity: f64) -> Result<f64> {
    check_positive(epsilon, "epsilon")?;
    check_positive(sensitivity, "sensitivity")?;
    Ok(2.0 * sensitivity / epsilon)
}

/// epsilon = 2 * sensitivity / T.
pub fn epsilon_from_temperature(temperature: f64, sensitivity: f64) -> Result<f64> {
    check_positive(temperature, "temperature")?;
    check_positive(sensitivity, "sensitivity")?;
    Ok(2.0 * sensitivity / temperature)
}

/// Clamps each logit into the bounds and rescales to [0, 1].
pub fn clip_normalize(logits: &[f64], bounds: &ClipBounds) -> Result<Vec<f64>> {
    let width = bounds.width();
    logits
        .iter()
        .map(|&x| {
            if !x.is_finite() {
                return Err(Error::invalid(format!("non-finite logit {x}")));
            }
            Ok((x.clamp(bounds.logit_min, bounds.logit_max) - bounds.logit_min) / width)
        })
        .collect()
}

/// Samples an index with probability proportional to
/// `exp(scaled_logits[i])`, by exact cumulative inverse sampling over
/// the whole vector.
pub fn sample_softmax<R: Rng + ?Sized>(scaled_logits: &[f64], rng: &mut R) -> Result<usize> {
    let weights = softmax_weights(scaled_logits)?;
    let total: f64 = weights.iter().sum();
    let target = rng.gen::<f64>() * total;
    let mut cumulative = 0.0;
    for (i, w) in weights.iter().enumerate() {
        cumulative += w;
        if target < cumulative {
            return Ok(i);
        }
    }
    Ok(weights.len() - 1)
}

/// Normalized `softmax(scaled_logits)`, the exact distribution
/// `sample_softmax` draws from.
pub fn softmax_probabilities(scaled_logits: &[f64]) -> Result<Vec<f64>> {
    let weights = softmax_weights(scaled_logits)?;
    let total: f64 = weights.iter().sum();
    Ok(weights.into_iter().map(|w| w / total).collect())
}

fn softmax_weights(scaled_logits: &[f64]) -> Result<Vec<f64>> {
    if scaled_logits.is_empty() {
        return Err(Error::invalid("empty logit vector"));
    }
    let max = scaled_logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return Err(Error::invalid("non-finite logit in sampling input"));
    }
    Ok(scaled_logits.iter().map(|&x| (x - max).exp()).collect())
}

/// Selects a token index with probability proportional to
/// `exp(u_t / T)` where `u = clip_normalize(logits, bounds)`, i.e. the
/// Exponential Mechanism at `epsilon = 2 * sensitivity / T` per token.
pub fn dp_select_token<R: Rng + ?Sized>(
    logits: &[f64],
    bounds: &ClipBounds,
    spec: &PrivacySpec,
    rng: &mut R,
) -> Result<usize> {
    let scaled = dp_scaled_utilities(logits, bounds, spec)?;
    sample_softmax(&scaled, rng)
}

/// The mechanism's selection distribution in closed form.
pub fn dp_selection_probabilities(
    logits: &[f64],
    bounds: &ClipBounds,
    spec: &PrivacySpec,
) -> Result<Vec<f64>> {
    let scaled = dp_scaled_utilities(logits, bounds, spec)?;
    softmax_probabilities(&scaled)
}

fn dp_scaled_utilities(logits: &[f64], bounds: &ClipBounds, spec: &PrivacySpec) -> Result<Vec<f64>> {
    if logits.is_empty() {
        return Err(Error::invalid("empty logit vector"));
    }
    let utilities = clip_normalize(logits, bounds)?;
    Ok(utilities.into_iter().map(|u| u / spec.temperature).collect())
}

/// One ledger line: tokens generated for one sentence of one document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetEntry {
    pub document_id: String,
    pub sentence_index: usize,
    pub tokens_generated: usize,
    pub epsilon_per_token: f64,
}

/// Append-only record of per-sentence budget consumption. The total is
/// basic sequential composition: the sum of tokens times per-token
/// epsilon. Appends must be serialized per ledger instance; parallel
/// runners keep one ledger per document and absorb them in order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BudgetLedger {
    entries: Vec<BudgetEntry>,
}

impl BudgetLedger {
    pub fn new() -> Self {
        BudgetLedger::default()
    }

    pub fn record(
        &mut self,
        document_id: &str,
        sentence_index: usize,
        tokens_generated: usize,
        epsilon_per_token: f64,
    ) -> Result<()> {
        check_positive(epsilon_per_token, "epsilon_per_token")?;
        self.entries.push(BudgetEntry {
            document_id: document_id.to_string(),
            sentence_index,
            tokens_generated,
            epsilon_per_token,
        });
        Ok(())
    }

    pub fn entries(&self) -> &[BudgetEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Appends all of `other`'s entries after this ledger's own.
    pub fn absorb(&mut self, other: BudgetLedger) {
        self.entries.extend(other.entries);
    }

    /// Total consumed budget under sequential composition.
    pub fn total_epsilon(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.tokens_generated as f64 * e.epsilon_per_token)
            .sum()
    }
}

/// Persisted result of a calibration run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub logit_min: f64,
    pub logit_max: f64,
    pub sample_count: usize,
    pub provider_id: String,
}

/// Measures the observed logit range while greedily decoding up to
/// `count` sample texts, and returns it as clipping bounds.
///
/// Deterministic for a deterministic provider and fixed sample order.
/// A provider that only ever emits one logit value yields a degenerate
/// range and is rejected.
pub fn calibrate_bounds(
    model: &dyn GenerativeModel,
    sample_texts: &[String],
    count: usize,
    limits: &GenerationLimits,
) -> Result<ClipBounds> {
    if count < 1 {
        return Err(Error::invalid("calibration count must be >= 1"));
    }
    if sample_texts.is_empty() {
        return Err(Error::invalid("calibration requires at least one sample text"));
    }
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for text in sample_texts.iter().take(count) {
        let prompt = model.encode(text, limits.max_len)?;
        let mut generated = Vec::new();
        for _ in 0..limits.max_new_tokens {
            let logits = model.next_logits(&prompt, &generated)?;
            let mut best = 0usize;
            for (i, &x) in logits.iter().enumerate() {
                if !x.is_finite() {
                    return Err(Error::invalid(format!("non-finite logit {x} during calibration")));
                }
                min = min.min(x);
                max = max.max(x);
                if x > logits[best] {
                    best = i;
                }
            }
            if best as u32 == model.eos_token() {
                break;
            }
            generated.push(best as u32);
        }
    }
    ClipBounds::new(min, max)
}
