//! Ground-truth generation.
//!
//! [`generate`] is a pure function of its configuration and name catalogs.
//! All randomness comes from a ChaCha8 stream seeded with
//! [`GeneratorConfig::seed`], so output is identical across platforms.

mod index;
pub mod lexical;
mod patterns;

use std::collections::BTreeSet;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::extractor::is_proper_name;
use crate::model::{
    AmbiguityEntry, GroundTruth, IndexEntry, MentionRelation, Person, PersonId, ShortText, TextId,
};

pub use index::build_person_index;
pub use lexical::{lexical_helper, HelperArg, HelperKind};
pub use patterns::{render_mention, MentionPlan, PatternId};

/// Separators placed between mentions of a multi-person text.
pub const DELIMITERS: [&str; 3] = ["; ", ";", " - "];
/// Opening/closing pairs a mention may be wrapped in.
pub const WRAPPERS: [(&str, &str); 4] = [("[", "]"), ("{", "}"), ("(", ")"), ("\"", "\"")];
/// Probability that a mention in a composed text gets wrapped.
pub const WRAP_PROBABILITY: f64 = 0.3;

const BUILTIN_FIRST_NAMES: &str = include_str!("../../data/first_names.txt");
const BUILTIN_LAST_NAMES: &str = include_str!("../../data/last_names.txt");

/// The random source behind the generator.
pub type GeneratorRng = ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub num_persons: usize,
    pub num_texts: usize,
    /// 0 means one person per text, rendered bare. Otherwise each text
    /// mentions between 1 and this many persons.
    pub max_mentions_per_text: usize,
    pub num_middle_names: usize,
    /// Number of groups sharing a last name, and again of groups sharing a
    /// first name.
    pub ambiguity_degree: usize,
    /// Persons per ambiguity group; `None` means the degree itself (at least 2).
    pub ambiguity_group_size: Option<usize>,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            num_persons: 1,
            num_texts: 10,
            max_mentions_per_text: 0,
            num_middle_names: 0,
            ambiguity_degree: 0,
            ambiguity_group_size: None,
        }
    }
}

impl GeneratorConfig {
    pub fn group_size(&self) -> usize {
        self.ambiguity_group_size
            .unwrap_or(self.ambiguity_degree.max(2))
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_persons == 0 {
            return Err(Error::Config("number of persons must be at least 1".into()));
        }
        if self.num_texts == 0 {
            return Err(Error::Config("number of texts must be at least 1".into()));
        }
        if self.num_middle_names > self.num_persons {
            return Err(Error::Config(format!(
                "{} middle names requested for {} persons",
                self.num_middle_names, self.num_persons
            )));
        }
        let capacity = self.max_mentions_per_text.max(1);
        if self.num_texts.saturating_mul(capacity) < self.num_persons {
            return Err(Error::Config(format!(
                "{} texts with at most {capacity} mention(s) each cannot mention all {} persons",
                self.num_texts, self.num_persons
            )));
        }
        let group = self.group_size();
        if group < 2 {
            return Err(Error::Config(
                "ambiguity group size must be at least 2".into(),
            ));
        }
        let grouped = 2 * self.ambiguity_degree * group;
        if grouped > self.num_persons {
            return Err(Error::Config(format!(
                "ambiguity degree {} with group size {group} needs {grouped} persons, only {} configured",
                self.ambiguity_degree, self.num_persons
            )));
        }
        Ok(())
    }
}

/// First- and last-name catalogs the generator draws from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameCatalogs {
    first_names: Vec<String>,
    last_names: Vec<String>,
}

impl NameCatalogs {
    pub fn new(first_names: Vec<String>, last_names: Vec<String>) -> Result<Self> {
        check_catalog("first-name", &first_names)?;
        check_catalog("last-name", &last_names)?;
        Ok(NameCatalogs {
            first_names,
            last_names,
        })
    }

    /// Parses two catalogs in the one-name-per-line format. Blank lines are
    /// skipped.
    pub fn parse(first_names: &str, last_names: &str) -> Result<Self> {
        NameCatalogs::new(parse_lines(first_names), parse_lines(last_names))
    }

    /// 197 popular US first names and the 100 most common US last names.
    pub fn builtin() -> Self {
        NameCatalogs::parse(BUILTIN_FIRST_NAMES, BUILTIN_LAST_NAMES)
            .expect("bundled catalogs are valid")
    }

    pub fn first_names(&self) -> &[String] {
        &self.first_names
    }

    pub fn last_names(&self) -> &[String] {
        &self.last_names
    }
}

fn parse_lines(s: &str) -> Vec<String> {
    s.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(String::from)
        .collect()
}

fn check_catalog(which: &str, names: &[String]) -> Result<()> {
    if names.is_empty() {
        return Err(Error::Config(format!("{which} catalog is empty")));
    }
    let mut seen = BTreeSet::new();
    for name in names {
        if !is_proper_name(name) {
            return Err(Error::Config(format!(
                "{which} catalog entry {name:?} is not a capitalized name"
            )));
        }
        if !seen.insert(name) {
            return Err(Error::Config(format!(
                "{which} catalog lists {name:?} twice"
            )));
        }
    }
    Ok(())
}

/// Outcome of checking which index persons a mention could refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Unambiguous(PersonId),
    Ambiguous {
        reason: String,
        persons: BTreeSet<PersonId>,
    },
}

/// Finds every index person consistent with the fully printed names of
/// `plan`. Initials and extra text are ignored.
pub fn classify_mention(plan: &MentionPlan, index: &[IndexEntry]) -> Result<Classification> {
    let target = index
        .iter()
        .find(|(id, _)| *id == plan.person_id)
        .map(|(_, p)| p)
        .ok_or_else(|| {
            Error::Precondition(format!("person {} is not in the index", plan.person_id))
        })?;
    let candidates: BTreeSet<PersonId> = index
        .iter()
        .filter(|(_, p)| {
            plan.fully_mentioned
                .iter()
                .all(|&field| p.name(field) == target.name(field))
        })
        .map(|(id, _)| *id)
        .collect();
    match candidates.len() {
        0 => Err(Error::Internal(format!(
            "mention {:?} matches no person, not even its own",
            plan.rendered
        ))),
        1 => Ok(Classification::Unambiguous(
            *candidates.first().expect("one element"),
        )),
        _ => Ok(Classification::Ambiguous {
            reason: plan.reason().to_string(),
            persons: candidates,
        }),
    }
}

/// Joins the mentions of one text: each may get wrapped in brackets or
/// quotes, and all are separated by one delimiter picked for the text.
pub fn compose_text<R: Rng + ?Sized>(plans: &[MentionPlan], rng: &mut R) -> String {
    let parts: Vec<String> = plans
        .iter()
        .map(|plan| {
            if rng.random_bool(WRAP_PROBABILITY) {
                let (open, close) = WRAPPERS.choose(rng).expect("non-empty list");
                format!("{open}{}{close}", plan.rendered)
            } else {
                plan.rendered.clone()
            }
        })
        .collect();
    if parts.len() <= 1 {
        return parts.into_iter().next().unwrap_or_default();
    }
    let delimiter = DELIMITERS.choose(rng).expect("non-empty list");
    parts.join(delimiter)
}

/// Hands out patterns for one person without repeating any until all legal
/// patterns have been used. A person with a middle name always starts with
/// pattern 11.
#[derive(Debug, Clone)]
struct PatternPool {
    has_middle: bool,
    remaining: Vec<PatternId>,
    started: bool,
}

impl PatternPool {
    fn new(person: &Person) -> Self {
        PatternPool {
            has_middle: person.middle_name().is_some(),
            remaining: Vec::new(),
            started: false,
        }
    }

    fn next<R: Rng + ?Sized>(&mut self, rng: &mut R) -> PatternId {
        if !self.started {
            self.started = true;
            self.remaining = PatternId::legal_set(self.has_middle);
            if self.has_middle {
                self.remaining
                    .retain(|p| *p != PatternId::FIRST_MIDDLE_LAST);
                return PatternId::FIRST_MIDDLE_LAST;
            }
        }
        if self.remaining.is_empty() {
            self.remaining = PatternId::legal_set(self.has_middle);
        }
        let i = rng.random_range(0..self.remaining.len());
        self.remaining.swap_remove(i)
    }
}

/// Two persons must not share a text when one of them could be mistaken for
/// the other, otherwise the same (text, person) pair would end up both in the
/// relation and in an ambiguity entry.
fn share_a_name(a: &Person, b: &Person) -> bool {
    a.first_name() == b.first_name() || a.last_name() == b.last_name()
}

/// Generates a full ground-truth bundle.
pub fn generate(config: &GeneratorConfig, catalogs: &NameCatalogs) -> Result<GroundTruth> {
    generate_traced(config, catalogs).map(|corpus| corpus.ground_truth)
}

/// Ground truth together with the mentions each text was composed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedCorpus {
    pub ground_truth: GroundTruth,
    /// `mentions[i]` lists the mentions of text `i`, in the order they appear.
    pub mentions: Vec<Vec<MentionPlan>>,
}

/// Like [`generate`], but also returns the rendered mentions behind every text.
pub fn generate_traced(
    config: &GeneratorConfig,
    catalogs: &NameCatalogs,
) -> Result<GeneratedCorpus> {
    config.validate()?;
    let mut rng = GeneratorRng::seed_from_u64(config.seed);
    let index = build_person_index(config, catalogs, &mut rng)?;
    let persons: Vec<&Person> = index.iter().map(|(_, p)| p).collect();
    let n = persons.len();
    let capacity = config.max_mentions_per_text.max(1);

    let mut counts: Vec<usize> = (0..config.num_texts)
        .map(|_| {
            if config.max_mentions_per_text == 0 {
                1
            } else {
                rng.random_range(1..=config.max_mentions_per_text)
            }
        })
        .collect();

    let conflicts = |slot: &[usize], candidate: usize| {
        slot.iter()
            .any(|&other| share_a_name(persons[other], persons[candidate]))
    };

    // first mentions: every person lands in some text
    let mut slots: Vec<Vec<usize>> = vec![Vec::new(); config.num_texts];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    for person in order {
        let open: Vec<usize> = (0..config.num_texts)
            .filter(|&t| slots[t].len() < capacity && !conflicts(&slots[t], person))
            .collect();
        let &text = open.choose(&mut rng).ok_or_else(|| {
            Error::Config(format!(
                "{} texts are too few to mention every person at least once",
                config.num_texts
            ))
        })?;
        slots[text].push(person);
    }

    // remaining slots
    for (slot, count) in slots.iter_mut().zip(counts.iter_mut()) {
        *count = (*count).max(slot.len());
        while slot.len() < *count {
            let eligible: Vec<usize> = (0..n)
                .filter(|&p| !slot.contains(&p) && !conflicts(slot, p))
                .collect();
            match eligible.choose(&mut rng) {
                Some(&p) => slot.push(p),
                None => break,
            }
        }
        slot.shuffle(&mut rng);
    }

    let mut pools: Vec<PatternPool> = persons.iter().map(|p| PatternPool::new(p)).collect();
    let mut texts = Vec::with_capacity(config.num_texts);
    let mut relations = BTreeSet::new();
    let mut ambiguities = Vec::new();
    let mut mentions = Vec::with_capacity(config.num_texts);
    for (t, slot) in slots.iter().enumerate() {
        let text_id = TextId(t as u64);
        let mut plans = Vec::with_capacity(slot.len());
        for &p in slot {
            let (person_id, person) = &index[p];
            let pattern = pools[p].next(&mut rng);
            let plan = render_mention(*person_id, person, pattern, &mut rng)?;
            match classify_mention(&plan, &index)? {
                Classification::Unambiguous(id) => {
                    relations.insert(MentionRelation::new(text_id, id));
                }
                Classification::Ambiguous { reason, persons } => {
                    ambiguities.push(AmbiguityEntry {
                        text_id,
                        reason,
                        person_ids: persons,
                    });
                }
            }
            plans.push(plan);
        }
        let content = if config.max_mentions_per_text == 0 {
            plans
                .first()
                .map(|p| p.rendered.clone())
                .ok_or_else(|| Error::Internal(format!("text {t} has no mention")))?
        } else {
            compose_text(&plans, &mut rng)
        };
        texts.push(ShortText::new(text_id, content));
        mentions.push(plans);
    }

    let gt = GroundTruth {
        texts,
        index,
        relations,
        ambiguities,
    };
    gt.validate().map_err(|e| Error::Internal(e.to_string()))?;
    Ok(GeneratedCorpus {
        ground_truth: gt,
        mentions,
    })
}
