//! Scripted stub model for deterministic tests.
//!
//! Fixture format: a JSON object mapping prompt patterns to logit
//! schedules. The first rule whose `pattern` occurs as a substring of
//! the decoded prompt wins; its schedule supplies one logit vector per
//! generation step, repeating the last vector once exhausted.
//!
//! ```json
//! {
//!   "id": "stub:fixed",
//!   "vocab": ["<eos>", "S", "[blank]", "<unk>"],
//!   "eos_token": 0,
//!   "rules": [
//!     { "pattern": "[blank]", "schedule": [[-9.0, 9.0, -9.0, -9.0]] }
//!   ],
//!   "default_schedule": [[9.0, -9.0, -9.0, -9.0]]
//! }
//! ```
//!
//! Tokenization is whitespace splitting over the vocabulary. Words not
//! in the vocabulary map to the `<unk>` entry, which must be present
//! whenever such words can occur.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{GenerativeModel, TokenId};
use crate::error::{Error, Result};

pub const UNK_WORD: &str = "<unk>";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StubRule {
    pub pattern: String,
    pub schedule: Vec<Vec<f64>>,
}

/// On-disk form of a stub model.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StubModelSpec {
    pub id: String,
    pub vocab: Vec<String>,
    pub eos_token: TokenId,
    #[serde(default)]
    pub rules: Vec<StubRule>,
    pub default_schedule: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct StubModel {
    spec: StubModelSpec,
    word_ids: HashMap<String, TokenId>,
}

impl StubModel {
    pub fn new(spec: StubModelSpec) -> Result<Self> {
        if spec.vocab.is_empty() {
            return Err(Error::invalid("stub model vocabulary is empty"));
        }
        if (spec.eos_token as usize) >= spec.vocab.len() {
            return Err(Error::invalid("stub model eos_token out of range"));
        }
        let vocab_len = spec.vocab.len();
        let schedules = spec
            .rules
            .iter()
            .map(|r| &r.schedule)
            .chain(std::iter::once(&spec.default_schedule));
        for schedule in schedules {
            if schedule.is_empty() {
                return Err(Error::invalid("stub model schedule is empty"));
            }
            if schedule.iter().any(|row| row.len() != vocab_len) {
                return Err(Error::invalid(
                    "stub model schedule row length does not match vocabulary size",
                ));
            }
        }
        let word_ids = spec
            .vocab
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i as TokenId))
            .collect();
        Ok(StubModel { spec, word_ids })
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let spec: StubModelSpec = serde_json::from_str(json)?;
        StubModel::new(spec)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let json = std::fs::read_to_string(path)?;
        StubModel::from_json(&json)
    }

    /// Convenience stub: always generates `word` once, then eos.
    pub fn fixed_word(id: &str, word: &str) -> Self {
        let spec = StubModelSpec {
            id: id.to_string(),
            vocab: vec!["<eos>".into(), word.into(), UNK_WORD.into()],
            eos_token: 0,
            rules: Vec::new(),
            default_schedule: vec![vec![-9.0, 9.0, -9.0], vec![9.0, -9.0, -9.0]],
        };
        StubModel::new(spec).expect("fixed_word spec is valid")
    }

    fn schedule_for(&self, prompt_text: &str) -> &[Vec<f64>] {
        for rule in &self.spec.rules {
            if prompt_text.contains(&rule.pattern) {
                return &rule.schedule;
            }
        }
        &self.spec.default_schedule
    }
}

impl GenerativeModel for StubModel {
    fn id(&self) -> &str {
        &self.spec.id
    }

    fn vocab_size(&self) -> usize {
        self.spec.vocab.len()
    }

    fn eos_token(&self) -> TokenId {
        self.spec.eos_token
    }

    fn encode(&self, text: &str, max_len: usize) -> Result<Vec<TokenId>> {
        let mut tokens = Vec::new();
        for word in text.split_whitespace() {
            if tokens.len() >= max_len {
                break;
            }
            match self.word_ids.get(word) {
                Some(&id) => tokens.push(id),
                None => match self.word_ids.get(UNK_WORD) {
                    Some(&unk) => tokens.push(unk),
                    None => {
                        return Err(Error::backend(format!(
                            "stub model {}: word {word:?} not in vocabulary and no {UNK_WORD} entry",
                            self.spec.id
                        )))
                    }
                },
            }
        }
        Ok(tokens)
    }

    fn next_logits(&self, prompt: &[TokenId], generated: &[TokenId]) -> Result<Vec<f64>> {
        let prompt_text = self.decode(prompt)?;
        let schedule = self.schedule_for(&prompt_text);
        let step = generated.len().min(schedule.len() - 1);
        Ok(schedule[step].clone())
    }

    fn decode(&self, tokens: &[TokenId]) -> Result<String> {
        let mut words = Vec::with_capacity(tokens.len());
        for &t in tokens {
            let word = self
                .spec
                .vocab
                .get(t as usize)
                .ok_or_else(|| Error::backend(format!("token id {t} out of range")))?;
            words.push(word.as_str());
        }
        Ok(words.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_word_spec() -> StubModelSpec {
        StubModelSpec {
            id: "stub:test".into(),
            vocab: vec!["<eos>".into(), "x".into(), "y".into(), UNK_WORD.into()],
            eos_token: 0,
            rules: vec![StubRule {
                pattern: "[blank]".into(),
                schedule: vec![vec![-9.0, 9.0, -9.0, -9.0], vec![-9.0, -9.0, 9.0, -9.0]],
            }],
            default_schedule: vec![vec![9.0, -9.0, -9.0, -9.0]],
        }
    }

    #[test]
    fn rejects_mismatched_schedule_rows() {
        let mut spec = two_word_spec();
        spec.default_schedule = vec![vec![0.0, 0.0]];
        assert!(StubModel::new(spec).is_err());
    }

    #[test]
    fn encode_maps_unknown_words_to_unk() {
        let model = StubModel::new(two_word_spec()).unwrap();
        let tokens = model.encode("x zebra y", usize::MAX).unwrap();
        assert_eq!(tokens, vec![1, 3, 2]);
    }

    #[test]
    fn encode_truncates_to_max_len() {
        let model = StubModel::new(two_word_spec()).unwrap();
        let tokens = model.encode("x y x y x", 3).unwrap();
        assert_eq!(tokens, vec![1, 2, 1]);
    }

    #[test]
    fn encode_without_unk_entry_fails_on_unknown_word() {
        let mut spec = two_word_spec();
        spec.vocab = vec!["<eos>".into(), "x".into(), "y".into()];
        spec.rules.clear();
        spec.default_schedule = vec![vec![9.0, -9.0, -9.0]];
        let model = StubModel::new(spec).unwrap();
        assert!(model.encode("x zebra", usize::MAX).is_err());
    }

    #[test]
    fn schedule_selection_matches_pattern_and_repeats_last_row() {
        let model = StubModel::new(two_word_spec()).unwrap();
        let prompt = model.encode("a [blank] b", usize::MAX);
        // "[blank]" is unknown here, so the pattern cannot match.
        assert!(prompt.is_ok());

        let mut spec = two_word_spec();
        spec.vocab.push("[blank]".into());
        for row in spec
            .rules
            .iter_mut()
            .flat_map(|r| r.schedule.iter_mut())
            .chain(spec.default_schedule.iter_mut())
        {
            row.push(-9.0);
        }
        let model = StubModel::new(spec).unwrap();
        let prompt = model.encode("x [blank] y", usize::MAX).unwrap();

        let step0 = model.next_logits(&prompt, &[]).unwrap();
        let step1 = model.next_logits(&prompt, &[1]).unwrap();
        let step9 = model.next_logits(&prompt, &[1; 9]).unwrap();
        assert_eq!(step0[1], 9.0);
        assert_eq!(step1[2], 9.0);
        assert_eq!(step9, step1);

        let no_blank = model.encode("x y", usize::MAX).unwrap();
        let default0 = model.next_logits(&no_blank, &[]).unwrap();
        assert_eq!(default0[0], 9.0);
    }
}
