//! Small string helpers used by the mention patterns.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::error::{Error, Result};

pub const NOTES: [&str; 4] = ["old", "TODO", "remember", "new"];
pub const ROLES: [&str; 4] = ["Executive", "CEO", "Chief", "Admin"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HelperKind {
    Letter,
    Lc,
    Department,
    Rnd,
    Note,
    Role,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HelperArg<'a> {
    Name(&'a str),
    Length(usize),
}

/// Dispatches to the individual helpers, checking that the argument each one
/// needs was supplied.
pub fn lexical_helper<R: Rng + ?Sized>(
    kind: HelperKind,
    arg: Option<HelperArg<'_>>,
    rng: &mut R,
) -> Result<String> {
    match (kind, arg) {
        (HelperKind::Letter, Some(HelperArg::Name(name))) => letter(name),
        (HelperKind::Lc, Some(HelperArg::Name(name))) => Ok(lc(name)),
        (HelperKind::Rnd, Some(HelperArg::Length(n))) => Ok(rnd(n, rng)),
        (HelperKind::Department, _) => Ok(department(rng)),
        (HelperKind::Note, _) => Ok(note(rng).to_string()),
        (HelperKind::Role, _) => Ok(role(rng).to_string()),
        (HelperKind::Letter | HelperKind::Lc, _) => {
            Err(Error::Usage(format!("{kind:?} requires a name argument")))
        }
        (HelperKind::Rnd, _) => Err(Error::Usage("Rnd requires a length argument".into())),
    }
}

/// First character of `name`.
pub fn letter(name: &str) -> Result<String> {
    name.chars()
        .next()
        .map(String::from)
        .ok_or_else(|| Error::Usage("letter() of an empty name".into()))
}

pub fn lc(name: &str) -> String {
    name.to_lowercase()
}

/// Something like `US-Z-G`: 2 to 5 hyphen-joined segments of 1 or 2
/// uppercase letters.
pub fn department<R: Rng + ?Sized>(rng: &mut R) -> String {
    let segments = rng.random_range(2..=5);
    (0..segments)
        .map(|_| {
            let len = rng.random_range(1..=2);
            (0..len)
                .map(|_| char::from(rng.random_range(b'A'..=b'Z')))
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("-")
}

/// `n` lowercase ASCII letters.
pub fn rnd<R: Rng + ?Sized>(n: usize, rng: &mut R) -> String {
    (0..n)
        .map(|_| char::from(rng.random_range(b'a'..=b'z')))
        .collect()
}

pub fn note<R: Rng + ?Sized>(rng: &mut R) -> &'static str {
    NOTES.choose(rng).expect("non-empty list")
}

pub fn role<R: Rng + ?Sized>(rng: &mut R) -> &'static str {
    ROLES.choose(rng).expect("non-empty list")
}
