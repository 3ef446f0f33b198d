//! Generative-model interface used by the rewriting mechanisms and by
//! clipping-bound calibration. Concrete heavyweight backends live
//! outside this crate; the shipped [`StubModel`] replays scripted logit
//! schedules for deterministic tests and CI runs.

mod stub;

pub use stub::{StubModel, StubModelSpec, StubRule};

use crate::error::Result;

/// Token id within a model's vocabulary.
pub type TokenId = u32;

/// Input truncation and generation caps.
///
/// `max_new_tokens` applies per generation call: per sentence for the
/// infilling mechanisms, per document for the paraphrase baseline
/// (which additionally never exceeds the original token length).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerationLimits {
    pub max_len: usize,
    pub max_new_tokens: usize,
}

impl GenerationLimits {
    pub const DEFAULT_MAX_LEN: usize = 512;
    pub const DEFAULT_MAX_NEW_TOKENS: usize = 32;

    pub fn new(max_len: usize, max_new_tokens: usize) -> Result<Self> {
        if max_len < 1 {
            return Err(crate::Error::invalid("max_len must be >= 1"));
        }
        if max_new_tokens < 1 {
            return Err(crate::Error::invalid("max_new_tokens must be >= 1"));
        }
        Ok(GenerationLimits { max_len, max_new_tokens })
    }
}

impl Default for GenerationLimits {
    fn default() -> Self {
        GenerationLimits {
            max_len: Self::DEFAULT_MAX_LEN,
            max_new_tokens: Self::DEFAULT_MAX_NEW_TOKENS,
        }
    }
}

/// Contract for a generative sequence model with an inspectable
/// next-token distribution. Logits must be deterministic for identical
/// state; all stochasticity lives in the sampler.
pub trait GenerativeModel: Send + Sync {
    /// Identifier recorded in manifests and calibration reports.
    fn id(&self) -> &str;

    fn vocab_size(&self) -> usize;

    /// End-of-sequence token id; selecting it terminates generation.
    fn eos_token(&self) -> TokenId;

    /// Tokenizes `text`, keeping at most the first `max_len` tokens.
    fn encode(&self, text: &str, max_len: usize) -> Result<Vec<TokenId>>;

    /// Raw next-token logits given the prompt and the tokens generated
    /// so far. Length equals `vocab_size()`.
    fn next_logits(&self, prompt: &[TokenId], generated: &[TokenId]) -> Result<Vec<f64>>;

    fn decode(&self, tokens: &[TokenId]) -> Result<String>;
}
