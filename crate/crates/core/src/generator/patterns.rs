//! The fourteen ways a person can be mentioned, and the bookkeeping needed to
//! tell later which names a mention spells out in full.

use std::collections::BTreeSet;
use std::ops::Range;

use rand::Rng;

use super::lexical::{department, lc, letter, note, rnd, role};
use crate::error::{Error, Result};
use crate::model::{NameField, Person, PersonId};

/// A mention pattern number, 1 through 14.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternId(u8);

impl PatternId {
    pub const FIRST_MIDDLE_LAST: PatternId = PatternId(11);

    pub fn new(id: u8) -> Result<Self> {
        if (1..=14).contains(&id) {
            Ok(PatternId(id))
        } else {
            Err(Error::Usage(format!("pattern id {id} is outside 1..=14")))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Patterns 11-14 need a middle name; 1-10 are for persons without one.
    pub fn uses_middle_name(self) -> bool {
        self.0 >= 11
    }

    /// Patterns usable for a person, depending on whether it has a middle name.
    pub fn legal_set(has_middle: bool) -> Vec<PatternId> {
        let range = if has_middle { 11..=14 } else { 1..=10 };
        range.map(PatternId).collect()
    }

    /// Names the pattern prints at full length.
    pub fn fully_mentioned(self) -> BTreeSet<NameField> {
        use NameField::*;
        let fields: &[NameField] = match self.0 {
            1 => &[First],
            2 | 6 | 7 | 13 | 14 => &[Last],
            3 | 4 | 5 | 8 | 9 | 10 | 12 => &[First, Last],
            11 => &[First, Middle, Last],
            _ => unreachable!("pattern ids are validated on construction"),
        };
        fields.iter().copied().collect()
    }
}

/// A rendered mention of one person.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MentionPlan {
    pub person_id: PersonId,
    pub pattern: PatternId,
    pub rendered: String,
    pub fully_mentioned: BTreeSet<NameField>,
    /// Byte ranges inside `rendered` of the fully printed names.
    pub name_spans: Vec<(NameField, Range<usize>)>,
}

impl MentionPlan {
    /// The stretch of the rendered mention covering every fully printed name.
    pub fn reason(&self) -> &str {
        let start = self.name_spans.iter().map(|(_, r)| r.start).min();
        let end = self.name_spans.iter().map(|(_, r)| r.end).max();
        match (start, end) {
            (Some(start), Some(end)) => &self.rendered[start..end],
            _ => "",
        }
    }
}

struct Builder {
    out: String,
    spans: Vec<(NameField, Range<usize>)>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            out: String::new(),
            spans: Vec::new(),
        }
    }

    fn lit(&mut self, s: &str) -> &mut Self {
        self.out.push_str(s);
        self
    }

    fn name(&mut self, field: NameField, s: &str) -> &mut Self {
        let start = self.out.len();
        self.out.push_str(s);
        self.spans.push((field, start..self.out.len()));
        self
    }
}

fn required(person: &Person, field: NameField, pattern: PatternId) -> Result<&str> {
    person.name(field).ok_or_else(|| {
        Error::Precondition(format!(
            "pattern {} needs a {field:?} name but {person} has none",
            pattern.get()
        ))
    })
}

/// Renders `person` with the given pattern.
pub fn render_mention<R: Rng + ?Sized>(
    person_id: PersonId,
    person: &Person,
    pattern: PatternId,
    rng: &mut R,
) -> Result<MentionPlan> {
    use NameField::*;

    if pattern.uses_middle_name() && person.middle_name().is_none() {
        return Err(Error::Precondition(format!(
            "pattern {} needs a middle name but {person} has none",
            pattern.get()
        )));
    }
    let fully = pattern.fully_mentioned();
    let needs_first = pattern.get() != 2 && pattern.get() != 7;
    let needs_last = pattern.get() != 1;
    let fnm = if needs_first {
        required(person, First, pattern)?
    } else {
        ""
    };
    let lnm = if needs_last {
        required(person, Last, pattern)?
    } else {
        ""
    };
    let mnm = person.middle_name().unwrap_or_default();

    let mut b = Builder::new();
    match pattern.get() {
        1 => {
            b.name(First, fnm);
        }
        2 => {
            b.name(Last, lnm);
        }
        3 => {
            b.name(First, fnm).lit(" ").name(Last, lnm);
        }
        4 => {
            b.name(Last, lnm).lit(" ").name(First, fnm);
        }
        5 => {
            b.name(Last, lnm).lit(", ").name(First, fnm);
        }
        6 => {
            b.name(Last, lnm).lit(", ").lit(&letter(fnm)?).lit(".");
        }
        7 => {
            b.name(Last, lnm).lit(" ").lit(&department(rng));
        }
        8 => {
            b.lit(&department(rng))
                .lit("\n")
                .name(Last, lnm)
                .lit(" ")
                .name(First, fnm);
        }
        9 => {
            let mailbox = rnd(5, rng);
            let tld = rnd(2, rng);
            b.name(Last, lnm)
                .lit(" ")
                .name(First, fnm)
                .lit(&format!(" <{}@{mailbox}.{tld}>", lc(lnm)));
        }
        10 => {
            let n = note(rng);
            let r = role(rng);
            b.lit(n)
                .lit(" ")
                .lit(r)
                .lit(" ")
                .name(Last, lnm)
                .lit(" ")
                .name(First, fnm);
        }
        11 => {
            b.name(First, fnm)
                .lit(" ")
                .name(Middle, mnm)
                .lit(" ")
                .name(Last, lnm);
        }
        12 => {
            b.name(First, fnm)
                .lit(" ")
                .lit(&letter(mnm)?)
                .lit(". ")
                .name(Last, lnm);
        }
        13 => {
            b.lit(&letter(fnm)?)
                .lit(". ")
                .lit(&letter(mnm)?)
                .lit(". ")
                .name(Last, lnm);
        }
        14 => {
            b.name(Last, lnm)
                .lit(", ")
                .lit(&letter(fnm)?)
                .lit(". ")
                .lit(&letter(mnm)?)
                .lit(".");
        }
        _ => unreachable!("pattern ids are validated on construction"),
    }
    debug_assert_eq!(
        b.spans.iter().map(|(f, _)| *f).collect::<BTreeSet<_>>(),
        fully
    );
    Ok(MentionPlan {
        person_id,
        pattern,
        rendered: b.out,
        fully_mentioned: fully,
        name_spans: b.spans,
    })
}
