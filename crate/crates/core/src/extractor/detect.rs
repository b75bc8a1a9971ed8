use std::ops::Range;

use super::Gazetteer;
use crate::model::TextId;

/// Longest token run reported as a single name.
pub const MAX_SPAN_TOKENS: usize = 3;

/// A run of tokens the detector believes names a person.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionSpan {
    pub text_id: TextId,
    pub token_range: Range<usize>,
    pub tokens: Vec<String>,
    /// In `[0, 1]`.
    pub confidence: f64,
}

/// Something that finds person-name spans in a tokenized text.
///
/// Detectors may keep state across texts; [`NameDetector::reset`] is called
/// before every text when the extractor is configured to do so.
pub trait NameDetector {
    fn reset(&mut self) {}

    fn detect(&mut self, text_id: TextId, tokens: &[String]) -> Vec<DetectionSpan>;
}

/// One uppercase letter followed by one or more lowercase letters.
pub fn is_proper_name(token: &str) -> bool {
    let mut chars = token.chars();
    match chars.next() {
        Some(c) if c.is_uppercase() => {}
        _ => return false,
    }
    let mut rest = chars.peekable();
    rest.peek().is_some() && rest.all(char::is_lowercase)
}

/// `(g + s) / (t + 1)`: `t` tokens in the span, `s` of them proper names, `g`
/// is 1 when any token is a known first name.
pub fn span_confidence(tokens: &[String], gazetteer: Option<&Gazetteer>) -> f64 {
    let t = tokens.len() as f64;
    let s = tokens.iter().filter(|tok| is_proper_name(tok)).count() as f64;
    let g = match gazetteer {
        Some(gaz) if tokens.iter().any(|tok| gaz.contains(tok)) => 1.0,
        _ => 0.0,
    };
    ((g + s) / (t + 1.0)).min(1.0)
}

/// Stateless capitalization heuristic: maximal runs of proper-name tokens,
/// cut into pieces of at most three tokens.
#[derive(Debug, Clone, Default)]
pub struct HeuristicDetector<'g> {
    gazetteer: Option<&'g Gazetteer>,
}

impl<'g> HeuristicDetector<'g> {
    pub fn new(gazetteer: Option<&'g Gazetteer>) -> Self {
        HeuristicDetector { gazetteer }
    }
}

impl NameDetector for HeuristicDetector<'_> {
    fn detect(&mut self, text_id: TextId, tokens: &[String]) -> Vec<DetectionSpan> {
        let mut spans = Vec::new();
        let mut i = 0;
        while i < tokens.len() {
            if !is_proper_name(&tokens[i]) {
                i += 1;
                continue;
            }
            let run_start = i;
            while i < tokens.len() && is_proper_name(&tokens[i]) {
                i += 1;
            }
            let mut start = run_start;
            while start < i {
                let end = (start + MAX_SPAN_TOKENS).min(i);
                let slice = &tokens[start..end];
                spans.push(DetectionSpan {
                    text_id,
                    token_range: start..end,
                    tokens: slice.to_vec(),
                    confidence: span_confidence(slice, self.gazetteer),
                });
                start = end;
            }
        }
        spans
    }
}
