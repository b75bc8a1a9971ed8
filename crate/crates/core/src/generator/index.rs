use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use super::{GeneratorConfig, NameCatalogs};
use crate::error::{Error, Result};
use crate::model::{IndexEntry, Person, PersonId};

/// Builds the ground-truth person index.
///
/// Persons come out in a fixed order: the groups sharing a last name, then
/// the groups sharing a first name, then persons whose names are unique. Every
/// name taken by an ambiguity group is used by that group only. Middle names
/// are then handed to `num_middle_names` randomly chosen persons, drawn from
/// first names that no person in the index uses as a first or last name.
pub fn build_person_index<R: Rng + ?Sized>(
    config: &GeneratorConfig,
    catalogs: &NameCatalogs,
    rng: &mut R,
) -> Result<Vec<IndexEntry>> {
    config.validate()?;
    let degree = config.ambiguity_degree;
    let group = config.group_size();
    let grouped = 2 * degree * group;
    let rest = config.num_persons - grouped;

    let need_first = degree * group + degree + rest;
    let need_last = degree + degree * group + rest;
    check_catalog("first-name", catalogs.first_names().len(), need_first)?;
    check_catalog("last-name", catalogs.last_names().len(), need_last)?;

    let mut firsts: Vec<&str> = catalogs.first_names().iter().map(String::as_str).collect();
    let mut lasts: Vec<&str> = catalogs.last_names().iter().map(String::as_str).collect();
    firsts.shuffle(rng);
    lasts.shuffle(rng);
    let mut firsts = firsts.into_iter();
    let mut lasts = lasts.into_iter();

    let mut persons: Vec<(String, String)> = Vec::with_capacity(config.num_persons);
    for _ in 0..degree {
        let shared = take(&mut lasts);
        for _ in 0..group {
            persons.push((take(&mut firsts).to_string(), shared.to_string()));
        }
    }
    for _ in 0..degree {
        let shared = take(&mut firsts);
        for _ in 0..group {
            persons.push((shared.to_string(), take(&mut lasts).to_string()));
        }
    }
    for _ in 0..rest {
        persons.push((take(&mut firsts).to_string(), take(&mut lasts).to_string()));
    }

    let used: HashSet<&str> = persons
        .iter()
        .flat_map(|(f, l)| [f.as_str(), l.as_str()])
        .collect();
    let mut middle_pool: Vec<&str> = catalogs
        .first_names()
        .iter()
        .map(String::as_str)
        .filter(|n| !used.contains(n))
        .collect();
    if middle_pool.len() < config.num_middle_names {
        return Err(Error::Config(format!(
            "first-name catalog leaves {} names for middle names, need {}",
            middle_pool.len(),
            config.num_middle_names
        )));
    }
    middle_pool.shuffle(rng);
    let mut chosen = index::sample(rng, config.num_persons, config.num_middle_names).into_vec();
    chosen.sort_unstable();
    let mut middles = vec![None; config.num_persons];
    for (slot, name) in chosen.into_iter().zip(middle_pool) {
        middles[slot] = Some(name);
    }

    persons
        .into_iter()
        .zip(middles)
        .enumerate()
        .map(|(i, ((first, last), middle))| {
            Person::new(Some(first), middle, Some(last)).map(|p| (PersonId(i as u64), p))
        })
        .collect()
}

fn take<'a>(names: &mut impl Iterator<Item = &'a str>) -> &'a str {
    names.next().expect("catalog size checked")
}

fn check_catalog(which: &str, have: usize, need: usize) -> Result<()> {
    if have < need {
        Err(Error::Config(format!(
            "{which} catalog has {have} names, the configuration needs {need}"
        )))
    } else {
        Ok(())
    }
}
