//! Domain types shared by the generator, the extractor and the evaluator.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// Identifier of a short text within a corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TextId(pub u64);

/// Identifier of a person within an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PersonId(pub u64);

impl fmt::Display for TextId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for PersonId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One of the three name slots of a [`Person`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NameField {
    First,
    Middle,
    Last,
}

impl NameField {
    pub const ALL: [NameField; 3] = [NameField::First, NameField::Middle, NameField::Last];
}

/// A person as a (first, middle, last) name triple. Absent names are `None`,
/// never the empty string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Person {
    first: Option<String>,
    middle: Option<String>,
    last: Option<String>,
}

impl Person {
    /// Builds a person, rejecting the all-absent triple and names that are
    /// empty or carry surrounding whitespace.
    pub fn new(
        first: Option<impl Into<String>>,
        middle: Option<impl Into<String>>,
        last: Option<impl Into<String>>,
    ) -> Result<Self> {
        let person = Person {
            first: first.map(Into::into),
            middle: middle.map(Into::into),
            last: last.map(Into::into),
        };
        person.check()?;
        Ok(person)
    }

    /// Convenience constructor where the empty string stands for an absent name.
    pub fn from_parts(first: &str, middle: &str, last: &str) -> Result<Self> {
        let opt = |s: &str| (!s.is_empty()).then(|| s.to_string());
        Person::new(opt(first), opt(middle), opt(last))
    }

    fn check(&self) -> Result<()> {
        if self.present_count() == 0 {
            return Err(Error::InvalidPerson("all three names are absent".into()));
        }
        for field in NameField::ALL {
            if let Some(name) = self.name(field) {
                if name.is_empty() {
                    return Err(Error::InvalidPerson(format!("empty {field:?} name")));
                }
                if name.trim() != name {
                    return Err(Error::InvalidPerson(format!(
                        "{field:?} name {name:?} has surrounding whitespace"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn first_name(&self) -> Option<&str> {
        self.first.as_deref()
    }

    pub fn middle_name(&self) -> Option<&str> {
        self.middle.as_deref()
    }

    pub fn last_name(&self) -> Option<&str> {
        self.last.as_deref()
    }

    pub fn name(&self, field: NameField) -> Option<&str> {
        match field {
            NameField::First => self.first_name(),
            NameField::Middle => self.middle_name(),
            NameField::Last => self.last_name(),
        }
    }

    /// Number of present name fields (1 to 3).
    pub fn present_count(&self) -> usize {
        NameField::ALL
            .iter()
            .filter(|f| self.name(**f).is_some())
            .count()
    }

    pub fn with_middle_name(mut self, middle: impl Into<String>) -> Result<Self> {
        self.middle = Some(middle.into());
        self.check()?;
        Ok(self)
    }

    /// Exchanges first and last name. Used by the gazetteer correction.
    pub(crate) fn swap_first_last(mut self) -> Self {
        std::mem::swap(&mut self.first, &mut self.last);
        self
    }
}

impl fmt::Display for Person {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |n: Option<&str>| n.unwrap_or("∅").to_string();
        write!(
            f,
            "({},{},{})",
            show(self.first_name()),
            show(self.middle_name()),
            show(self.last_name())
        )
    }
}

/// True iff all three names are pairwise identical (absent equals only absent).
pub fn persons_equal(a: &Person, b: &Person) -> bool {
    a == b
}

/// True iff every present name of `partial` matches `fuller` and `fuller` has
/// strictly more present names.
pub fn person_subsumes(fuller: &Person, partial: &Person) -> bool {
    fuller.present_count() > partial.present_count()
        && NameField::ALL
            .iter()
            .all(|&field| match partial.name(field) {
                Some(name) => fuller.name(field) == Some(name),
                None => true,
            })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShortText {
    pub id: TextId,
    pub content: String,
}

impl ShortText {
    pub fn new(id: TextId, content: impl Into<String>) -> Self {
        ShortText {
            id,
            content: content.into(),
        }
    }
}

/// A `(text, person)` pair: the text unambiguously mentions the person.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MentionRelation {
    pub text_id: TextId,
    pub person_id: PersonId,
}

impl MentionRelation {
    pub fn new(text_id: TextId, person_id: PersonId) -> Self {
        MentionRelation { text_id, person_id }
    }
}

/// A reference that cannot be resolved: `reason` (a substring of the text)
/// could denote any of `person_ids`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AmbiguityEntry {
    pub text_id: TextId,
    pub reason: String,
    pub person_ids: BTreeSet<PersonId>,
}

impl AmbiguityEntry {
    pub fn new(
        text_id: TextId,
        reason: impl Into<String>,
        person_ids: impl IntoIterator<Item = PersonId>,
    ) -> Self {
        AmbiguityEntry {
            text_id,
            reason: reason.into(),
            person_ids: person_ids.into_iter().collect(),
        }
    }
}

pub type IndexEntry = (PersonId, Person);

/// Ground truth bundle: texts, person index, relation and ambiguity list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroundTruth {
    pub texts: Vec<ShortText>,
    pub index: Vec<IndexEntry>,
    pub relations: BTreeSet<MentionRelation>,
    pub ambiguities: Vec<AmbiguityEntry>,
}

/// What an extractor produces: everything in [`GroundTruth`] except the texts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgorithmOutput {
    pub index: Vec<IndexEntry>,
    pub relations: BTreeSet<MentionRelation>,
    pub ambiguities: Vec<AmbiguityEntry>,
}

impl GroundTruth {
    /// The ground truth viewed as if it were an algorithm's answer.
    pub fn as_output(&self) -> AlgorithmOutput {
        AlgorithmOutput {
            index: self.index.clone(),
            relations: self.relations.clone(),
            ambiguities: self.ambiguities.clone(),
        }
    }

    pub fn person(&self, id: PersonId) -> Option<&Person> {
        self.index
            .iter()
            .find(|(pid, _)| *pid == id)
            .map(|(_, p)| p)
    }

    pub fn text(&self, id: TextId) -> Option<&ShortText> {
        self.texts.iter().find(|t| t.id == id)
    }

    /// Checks every structural invariant; all violations are reported at once.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();

        let mut contents: HashMap<TextId, &str> = HashMap::new();
        for text in &self.texts {
            if text.content.is_empty() {
                problems.push(format!("text {} is empty", text.id));
            }
            if contents.insert(text.id, &text.content).is_some() {
                problems.push(format!("duplicate text id {}", text.id));
            }
        }

        check_structure(
            &self.index,
            &self.relations,
            &self.ambiguities,
            |id| contents.get(&id).copied().map(Some),
            &mut problems,
        );

        let mut mentioned: HashSet<PersonId> = self.relations.iter().map(|r| r.person_id).collect();
        let mut expanded: HashSet<(TextId, PersonId)> = HashSet::new();
        for entry in &self.ambiguities {
            for &pid in &entry.person_ids {
                mentioned.insert(pid);
                expanded.insert((entry.text_id, pid));
            }
        }
        for (pid, _) in &self.index {
            if !mentioned.contains(pid) {
                problems.push(format!("person {pid} is never mentioned"));
            }
        }
        for rel in &self.relations {
            if expanded.contains(&(rel.text_id, rel.person_id)) {
                problems.push(format!(
                    "pair (text {}, person {}) is both related and ambiguous",
                    rel.text_id, rel.person_id
                ));
            }
        }

        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }
}

impl AlgorithmOutput {
    /// Structural checks that need no texts: unique ids, referenced persons exist,
    /// ambiguity sets of at least two persons.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        check_structure(
            &self.index,
            &self.relations,
            &self.ambiguities,
            |_| Some(None),
            &mut problems,
        );
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }

    /// Same checks as [`AlgorithmOutput::validate`], plus every referenced
    /// text must exist in `texts` and every reason must occur in its text.
    pub fn validate_against(&self, texts: &[ShortText]) -> Result<()> {
        let contents: HashMap<TextId, &str> =
            texts.iter().map(|t| (t.id, t.content.as_str())).collect();
        let mut problems = Vec::new();
        check_structure(
            &self.index,
            &self.relations,
            &self.ambiguities,
            |id| contents.get(&id).copied().map(Some),
            &mut problems,
        );
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }
}

/// `lookup_text` returns `None` for an unknown text, `Some(None)` when the
/// text is assumed to exist but its content is unavailable.
fn check_structure<'a>(
    index: &[IndexEntry],
    relations: &BTreeSet<MentionRelation>,
    ambiguities: &[AmbiguityEntry],
    lookup_text: impl Fn(TextId) -> Option<Option<&'a str>>,
    problems: &mut Vec<String>,
) {
    let mut ids = HashSet::new();
    for (pid, _) in index {
        if !ids.insert(*pid) {
            problems.push(format!("duplicate person id {pid}"));
        }
    }
    for rel in relations {
        if lookup_text(rel.text_id).is_none() {
            problems.push(format!("relation references unknown text {}", rel.text_id));
        }
        if !ids.contains(&rel.person_id) {
            problems.push(format!(
                "relation references unknown person {}",
                rel.person_id
            ));
        }
    }
    for entry in ambiguities {
        match lookup_text(entry.text_id) {
            None => problems.push(format!(
                "ambiguity references unknown text {}",
                entry.text_id
            )),
            Some(Some(content)) if !content.contains(entry.reason.as_str()) => {
                problems.push(format!(
                    "ambiguity reason {:?} does not occur in text {}",
                    entry.reason, entry.text_id
                ))
            }
            _ => {}
        }
        if entry.reason.is_empty() {
            problems.push(format!("empty ambiguity reason in text {}", entry.text_id));
        }
        if entry.person_ids.len() < 2 {
            problems.push(format!(
                "ambiguity {:?} in text {} names fewer than two persons",
                entry.reason, entry.text_id
            ));
        }
        for pid in &entry.person_ids {
            if !ids.contains(pid) {
                problems.push(format!("ambiguity references unknown person {pid}"));
            }
        }
    }
}
