//! Unsupervised baseline that builds a person index from short texts.
//!
//! The pipeline tokenizes each text, detects capitalized name runs, guesses
//! which token is the first, middle and last name, optionally corrects that
//! guess with a first-name gazetteer, merges the candidates into an index and
//! finally links every text to the index persons whose first or last name it
//! contains.

mod detect;
mod tokenize;

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::model::{
    person_subsumes, AlgorithmOutput, AmbiguityEntry, IndexEntry, MentionRelation, NameField,
    Person, PersonId, ShortText,
};

pub use detect::{
    is_proper_name, span_confidence, DetectionSpan, HeuristicDetector, NameDetector,
    MAX_SPAN_TOKENS,
};
pub use tokenize::tokenize;

/// Spans below this confidence are dropped when thresholding is on.
pub const CONFIDENCE_THRESHOLD: f64 = 0.5;

/// A flat set of known first names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Gazetteer {
    names: HashSet<String>,
}

impl Gazetteer {
    pub fn from_names<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Gazetteer {
            names: names.into_iter().map(Into::into).collect(),
        }
    }

    /// One name per line; surrounding whitespace and blank lines are ignored.
    pub fn parse(s: &str) -> Self {
        Gazetteer::from_names(s.lines().map(str::trim).filter(|l| !l.is_empty()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.contains(name)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// The three independently switchable features of the baseline.
#[derive(Debug, Clone, Default)]
pub struct ExtractorConfig {
    /// Reset detector state before every text.
    pub reset_state_per_text: bool,
    /// Drop spans with confidence below [`CONFIDENCE_THRESHOLD`].
    pub confidence_threshold_enabled: bool,
    /// Known first names used to fix swapped first/last names.
    pub gazetteer: Option<Gazetteer>,
}

/// Runs the default heuristic detector over one token list.
pub fn detect_name_spans(
    text_id: crate::model::TextId,
    tokens: &[String],
    config: &ExtractorConfig,
) -> Vec<DetectionSpan> {
    let mut detector = HeuristicDetector::new(config.gazetteer.as_ref());
    apply_threshold(detector.detect(text_id, tokens), config)
}

fn apply_threshold(spans: Vec<DetectionSpan>, config: &ExtractorConfig) -> Vec<DetectionSpan> {
    if config.confidence_threshold_enabled {
        spans
            .into_iter()
            .filter(|s| s.confidence >= CONFIDENCE_THRESHOLD)
            .collect()
    } else {
        spans
    }
}

/// Joins `Last, First`: a one-token span, a comma, and another one-token span
/// become a single two-token span, which role assignment reads as last name
/// then first name.
pub fn join_inverted_names(spans: Vec<DetectionSpan>, tokens: &[String]) -> Vec<DetectionSpan> {
    let mut joined: Vec<DetectionSpan> = Vec::with_capacity(spans.len());
    for span in spans {
        if let Some(prev) = joined.last_mut() {
            let comma_between = prev.token_range.end + 1 == span.token_range.start
                && tokens.get(prev.token_range.end).map(String::as_str) == Some(",");
            if comma_between && prev.tokens.len() == 1 && span.tokens.len() == 1 {
                prev.token_range = prev.token_range.start..span.token_range.end;
                prev.tokens.extend(span.tokens);
                prev.confidence = prev.confidence.min(span.confidence);
                continue;
            }
        }
        joined.push(span);
    }
    joined
}

/// One token is a last name, two are "last first", and of three the middle
/// one is the middle name, framed by first and last.
pub fn assign_name_roles(span: &DetectionSpan) -> Result<Person> {
    match span.tokens.as_slice() {
        [last] => Person::new(None::<&str>, None::<&str>, Some(last.as_str())),
        [last, first] => Person::new(Some(first.as_str()), None::<&str>, Some(last.as_str())),
        [first, middle, last] => Person::new(
            Some(first.as_str()),
            Some(middle.as_str()),
            Some(last.as_str()),
        ),
        other => Err(Error::Precondition(format!(
            "a span must have 1 to {MAX_SPAN_TOKENS} tokens, got {}",
            other.len()
        ))),
    }
}

/// Swaps first and last name when the last name is a known first name and
/// the first name is not (an absent first name counts as not known).
pub fn gazetteer_swap(person: Person, gazetteer: &Gazetteer) -> Person {
    let last_known = person.last_name().is_some_and(|n| gazetteer.contains(n));
    let first_known = person.first_name().is_some_and(|n| gazetteer.contains(n));
    if last_known && !first_known {
        person.swap_first_last()
    } else {
        person
    }
}

/// Removes duplicates, then absorbs every partial person that exactly one
/// fuller person is consistent with. Repeats until nothing changes. Ids follow
/// first-occurrence order of the survivors.
pub fn consolidate_index(candidates: Vec<Person>) -> Vec<IndexEntry> {
    let mut seen = HashSet::new();
    let mut persons: Vec<Person> = candidates
        .into_iter()
        .filter(|p| seen.insert(p.clone()))
        .collect();

    loop {
        let absorbed: Vec<bool> = persons
            .iter()
            .map(|partial| {
                persons
                    .iter()
                    .filter(|fuller| person_subsumes(fuller, partial))
                    .count()
                    == 1
            })
            .collect();
        if !absorbed.contains(&true) {
            break;
        }
        persons = persons
            .into_iter()
            .zip(absorbed)
            .filter_map(|(p, gone)| (!gone).then_some(p))
            .collect();
    }

    persons
        .into_iter()
        .enumerate()
        .map(|(i, p)| (PersonId(i as u64), p))
        .collect()
}

/// Links each text to the persons whose first or last name equals one of its
/// tokens. A token matching one person yields a relation, a token matching
/// several yields an ambiguity entry with that token as the reason.
pub fn link_mentions(
    texts: &[ShortText],
    index: &[IndexEntry],
) -> (BTreeSet<MentionRelation>, Vec<AmbiguityEntry>) {
    let mut sorted: Vec<&ShortText> = texts.iter().collect();
    sorted.sort_by_key(|t| t.id);

    let mut relations = BTreeSet::new();
    let mut ambiguities = Vec::new();
    let mut seen_ambiguities = HashSet::new();
    for text in sorted {
        for token in tokenize(&text.content) {
            let matches: BTreeSet<PersonId> = index
                .iter()
                .filter(|(_, p)| {
                    p.name(NameField::First) == Some(token.as_str())
                        || p.name(NameField::Last) == Some(token.as_str())
                })
                .map(|(id, _)| *id)
                .collect();
            match matches.len() {
                0 => {}
                1 => {
                    let id = *matches.first().expect("one match");
                    relations.insert(MentionRelation::new(text.id, id));
                }
                _ => {
                    let entry = AmbiguityEntry {
                        text_id: text.id,
                        reason: token,
                        person_ids: matches,
                    };
                    if seen_ambiguities.insert(entry.clone()) {
                        ambiguities.push(entry);
                    }
                }
            }
        }
    }
    (relations, ambiguities)
}

/// Runs the baseline with the default heuristic detector.
pub fn extract(texts: &[ShortText], config: &ExtractorConfig) -> AlgorithmOutput {
    let mut detector = HeuristicDetector::new(config.gazetteer.as_ref());
    extract_with(&mut detector, texts, config)
}

/// Runs the baseline with any detector.
pub fn extract_with<D: NameDetector + ?Sized>(
    detector: &mut D,
    texts: &[ShortText],
    config: &ExtractorConfig,
) -> AlgorithmOutput {
    let mut sorted: Vec<&ShortText> = texts.iter().collect();
    sorted.sort_by_key(|t| t.id);

    let mut candidates = Vec::new();
    for text in sorted {
        if config.reset_state_per_text {
            detector.reset();
        }
        let tokens = tokenize(&text.content);
        let spans = apply_threshold(detector.detect(text.id, &tokens), config);
        let spans = join_inverted_names(spans, &tokens);
        for span in spans {
            let Ok(person) = assign_name_roles(&span) else {
                continue;
            };
            let proper = NameField::ALL
                .iter()
                .filter_map(|&f| person.name(f))
                .all(is_proper_name);
            if !proper {
                continue;
            }
            let person = match &config.gazetteer {
                Some(gaz) => gazetteer_swap(person, gaz),
                None => person,
            };
            candidates.push(person);
        }
    }

    let index = consolidate_index(candidates);
    let (relations, ambiguities) = link_mentions(texts, &index);
    AlgorithmOutput {
        index,
        relations,
        ambiguities,
    }
}
