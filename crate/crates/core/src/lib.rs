//! Toolkit for the person index challenge: given a pile of messy short texts
//! (spreadsheet cells, notes, mail headers), build a distinct index of the
//! persons they mention.
//!
//! The crate has three pipelines sharing one set of domain types:
//!
//! - [`generator`] synthesizes ground truth: a person index, texts mentioning
//!   those persons in fourteen different ways, and the text/person relation
//!   plus the list of references that cannot be disambiguated.
//! - [`extractor`] is an unsupervised baseline that rebuilds the index from
//!   the texts alone.
//! - [`evaluator`] scores any extractor output against ground truth.

pub mod error;
pub mod evaluator;
pub mod extractor;
pub mod generator;
pub mod model;

pub use error::{Error, Result};
pub use evaluator::{evaluate, EvaluationReport, MetricTriple};
pub use extractor::{extract, ExtractorConfig};
pub use generator::{generate, GeneratorConfig, NameCatalogs};
pub use model::{
    AlgorithmOutput, AmbiguityEntry, GroundTruth, MentionRelation, Person, PersonId, ShortText,
    TextId,
};
