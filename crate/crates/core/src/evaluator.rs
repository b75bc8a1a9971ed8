//! Scores an [`AlgorithmOutput`] against a [`GroundTruth`].
//!
//! Three precision/recall/F triples are computed:
//!
//! - **P**, the person index: a person counts as found only if all three of
//!   its names match exactly.
//! - **R**, the text/person relation, restricted to the matched persons and
//!   averaged per person.
//! - **A**, the ambiguity list, flattened into `(text, reason, person)`
//!   triples.
//!
//! A metric with a zero denominator is undefined (`None`) and is shown as `-`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{
    AlgorithmOutput, AmbiguityEntry, GroundTruth, IndexEntry, MentionRelation, PersonId, TextId,
};

/// Column names in report order.
pub const METRIC_COLUMNS: [&str; 9] = [
    "prec_P", "recall_P", "f_P", "prec_R", "recall_R", "f_R", "prec_A", "recall_A", "f_A",
];

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MetricTriple {
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub fscore: Option<f64>,
}

impl MetricTriple {
    pub fn new(precision: Option<f64>, recall: Option<f64>) -> Self {
        MetricTriple {
            precision,
            recall,
            fscore: fscore(precision, recall),
        }
    }

    pub fn values(&self) -> [Option<f64>; 3] {
        [self.precision, self.recall, self.fscore]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EvaluationReport {
    pub index_metrics: MetricTriple,
    pub relation_metrics: MetricTriple,
    pub ambiguity_metrics: MetricTriple,
    pub matched_person_count: usize,
}

impl EvaluationReport {
    /// The nine metrics in column order.
    pub fn values(&self) -> [Option<f64>; 9] {
        let [a, b, c] = self.index_metrics.values();
        let [d, e, f] = self.relation_metrics.values();
        let [g, h, i] = self.ambiguity_metrics.values();
        [a, b, c, d, e, f, g, h, i]
    }

    /// `name: value` lines rounded to two decimals.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        for (name, value) in METRIC_COLUMNS.iter().zip(self.values()) {
            out.push_str(&format!("{name}: {}\n", format_rounded(value)));
        }
        out.push_str(&format!("matched_persons: {}\n", self.matched_person_count));
        out
    }

    /// Header line of the machine-readable report.
    pub fn csv_header() -> String {
        METRIC_COLUMNS.join(",")
    }

    /// Data line of the machine-readable report, full precision.
    pub fn csv_row(&self) -> String {
        self.values()
            .iter()
            .map(|v| format_full(*v))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for EvaluationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_key_value())
    }
}

/// Two decimals, or `-` when undefined.
pub fn format_rounded(value: Option<f64>) -> String {
    value.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"))
}

/// Shortest exact representation, or `-` when undefined.
pub fn format_full(value: Option<f64>) -> String {
    value.map_or_else(|| "-".to_string(), |v| format!("{v}"))
}

/// Harmonic mean of precision and recall.
pub fn fscore(precision: Option<f64>, recall: Option<f64>) -> Option<f64> {
    let (p, r) = (precision?, recall?);
    (p + r > 0.0).then(|| 2.0 * p * r / (p + r))
}

fn ratio(numerator: usize, denominator: usize) -> Option<f64> {
    (denominator > 0).then(|| numerator as f64 / denominator as f64)
}

fn mean(values: &[f64]) -> Option<f64> {
    (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
}

/// Pairs of `(ground-truth id, algorithm id)` whose persons are identical.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PersonMatching {
    pub pairs: Vec<(PersonId, PersonId)>,
    algo_to_gt: HashMap<PersonId, PersonId>,
}

impl PersonMatching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Ground-truth id of a matched algorithm person.
    pub fn to_gt(&self, algo_id: PersonId) -> Option<PersonId> {
        self.algo_to_gt.get(&algo_id).copied()
    }
}

/// Matches persons with identical names across both indices.
pub fn match_persons(gt_index: &[IndexEntry], algo_index: &[IndexEntry]) -> Result<PersonMatching> {
    let gt_by_person = unique_persons("ground truth", gt_index)?;
    unique_persons("algorithm output", algo_index)?;
    let mut pairs: Vec<(PersonId, PersonId)> = algo_index
        .iter()
        .filter_map(|(algo_id, person)| gt_by_person.get(person).map(|gt_id| (*gt_id, *algo_id)))
        .collect();
    pairs.sort();
    let algo_to_gt = pairs.iter().map(|&(g, a)| (a, g)).collect();
    Ok(PersonMatching { pairs, algo_to_gt })
}

fn unique_persons<'a>(
    which: &str,
    index: &'a [IndexEntry],
) -> Result<HashMap<&'a crate::model::Person, PersonId>> {
    let mut by_person = HashMap::new();
    let mut ids = HashSet::new();
    let mut problems = Vec::new();
    for (id, person) in index {
        if !ids.insert(*id) {
            problems.push(format!("{which} index repeats person id {id}"));
        }
        if let Some(prev) = by_person.insert(person, *id) {
            problems.push(format!(
                "{which} index lists {person} twice (ids {prev} and {id})"
            ));
        }
    }
    if problems.is_empty() {
        Ok(by_person)
    } else {
        Err(Error::Validation(problems))
    }
}

pub fn index_metrics(gt_size: usize, algo_size: usize, matched: usize) -> MetricTriple {
    MetricTriple::new(ratio(matched, algo_size), ratio(matched, gt_size))
}

/// Per matched person, compares the texts it is related to; precision and
/// recall are unweighted means over persons with a non-empty denominator.
pub fn relation_metrics(
    gt_relations: &BTreeSet<MentionRelation>,
    algo_relations: &BTreeSet<MentionRelation>,
    matching: &PersonMatching,
) -> MetricTriple {
    let mut gt_texts: HashMap<PersonId, HashSet<TextId>> = HashMap::new();
    for rel in gt_relations {
        gt_texts
            .entry(rel.person_id)
            .or_default()
            .insert(rel.text_id);
    }
    let mut algo_texts: HashMap<PersonId, HashSet<TextId>> = HashMap::new();
    for rel in algo_relations {
        algo_texts
            .entry(rel.person_id)
            .or_default()
            .insert(rel.text_id);
    }

    let empty = HashSet::new();
    let mut precisions = Vec::new();
    let mut recalls = Vec::new();
    for &(gt_id, algo_id) in &matching.pairs {
        let expected = gt_texts.get(&gt_id).unwrap_or(&empty);
        let found = algo_texts.get(&algo_id).unwrap_or(&empty);
        let hits = expected.intersection(found).count();
        if let Some(p) = ratio(hits, found.len()) {
            precisions.push(p);
        }
        if let Some(r) = ratio(hits, expected.len()) {
            recalls.push(r);
        }
    }
    MetricTriple::new(mean(&precisions), mean(&recalls))
}

/// Flattens both ambiguity lists into `(text, reason, person)` triples and
/// compares them. Algorithm persons without a match can never hit but still
/// count towards the precision denominator.
pub fn ambiguity_metrics(
    gt_ambiguities: &[AmbiguityEntry],
    algo_ambiguities: &[AmbiguityEntry],
    matching: &PersonMatching,
) -> MetricTriple {
    let gt: HashSet<(TextId, &str, PersonId)> = flatten(gt_ambiguities).collect();
    let algo: HashSet<(TextId, &str, PersonId)> = flatten(algo_ambiguities).collect();
    let hits = algo
        .iter()
        .filter(|(text, reason, algo_id)| {
            matching
                .to_gt(*algo_id)
                .is_some_and(|gt_id| gt.contains(&(*text, *reason, gt_id)))
        })
        .count();
    MetricTriple::new(ratio(hits, algo.len()), ratio(hits, gt.len()))
}

fn flatten(entries: &[AmbiguityEntry]) -> impl Iterator<Item = (TextId, &str, PersonId)> {
    entries.iter().flat_map(|e| {
        e.person_ids
            .iter()
            .map(move |pid| (e.text_id, e.reason.as_str(), *pid))
    })
}

/// Computes all nine metrics. Fails when the output references texts the
/// ground truth does not have, or persons missing from its own index.
pub fn evaluate(gt: &GroundTruth, out: &AlgorithmOutput) -> Result<EvaluationReport> {
    check_references(gt, out)?;
    let matching = match_persons(&gt.index, &out.index)?;
    Ok(EvaluationReport {
        index_metrics: index_metrics(gt.index.len(), out.index.len(), matching.len()),
        relation_metrics: relation_metrics(&gt.relations, &out.relations, &matching),
        ambiguity_metrics: ambiguity_metrics(&gt.ambiguities, &out.ambiguities, &matching),
        matched_person_count: matching.len(),
    })
}

fn check_references(gt: &GroundTruth, out: &AlgorithmOutput) -> Result<()> {
    let texts: HashSet<TextId> = gt.texts.iter().map(|t| t.id).collect();
    let algo_ids: HashSet<PersonId> = out.index.iter().map(|(id, _)| *id).collect();
    let mut problems = Vec::new();
    for rel in &out.relations {
        if !texts.contains(&rel.text_id) {
            problems.push(format!(
                "relation ({}, {}) references unknown text {}",
                rel.text_id, rel.person_id, rel.text_id
            ));
        }
        if !algo_ids.contains(&rel.person_id) {
            problems.push(format!(
                "relation ({}, {}) references unknown person {}",
                rel.text_id, rel.person_id, rel.person_id
            ));
        }
    }
    for entry in &out.ambiguities {
        if !texts.contains(&entry.text_id) {
            problems.push(format!(
                "ambiguity ({}, {:?}) references unknown text {}",
                entry.text_id, entry.reason, entry.text_id
            ));
        }
        for pid in &entry.person_ids {
            if !algo_ids.contains(pid) {
                problems.push(format!(
                    "ambiguity ({}, {:?}) references unknown person {pid}",
                    entry.text_id, entry.reason
                ));
            }
        }
    }
    if problems.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation(problems))
    }
}
