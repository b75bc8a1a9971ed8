//! Independent oracles shared by the integration and acceptance tests.
//!
//! Nothing here calls into the generator's classifier or the evaluator's
//! metric code; the expectations are recomputed from first principles.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use person_index::generator::{GeneratedCorpus, MentionPlan};
use person_index::model::{IndexEntry, NameField, Person};
use person_index::{
    AlgorithmOutput, AmbiguityEntry, GeneratorConfig, GroundTruth, MentionRelation, PersonId,
    ShortText, TextId,
};
use rand::seq::IndexedRandom;
use rand::Rng;

/// Full-name columns per pattern, transcribed by hand: (first, middle, last).
const FULL_COLUMNS: [(bool, bool, bool); 14] = [
    (true, false, false),
    (false, false, true),
    (true, false, true),
    (true, false, true),
    (true, false, true),
    (false, false, true),
    (false, false, true),
    (true, false, true),
    (true, false, true),
    (true, false, true),
    (true, true, true),
    (true, false, true),
    (false, false, true),
    (false, false, true),
];

fn columns(pattern: u8) -> BTreeSet<NameField> {
    let (f, m, l) = FULL_COLUMNS[pattern as usize - 1];
    let mut set = BTreeSet::new();
    if f {
        set.insert(NameField::First);
    }
    if m {
        set.insert(NameField::Middle);
    }
    if l {
        set.insert(NameField::Last);
    }
    set
}

fn initial(name: &str) -> String {
    name.chars().next().unwrap().to_string()
}

fn is_department(s: &str) -> bool {
    let segs: Vec<&str> = s.split('-').collect();
    (2..=5).contains(&segs.len())
        && segs
            .iter()
            .all(|seg| (1..=2).contains(&seg.len()) && seg.bytes().all(|b| b.is_ascii_uppercase()))
}

/// Checks a rendered mention against the textual template of its pattern.
fn check_rendering(person: &Person, plan: &MentionPlan) -> Result<(), String> {
    let first = person.first_name().unwrap_or("");
    let middle = person.middle_name().unwrap_or("");
    let last = person.last_name().unwrap_or("");
    let r = plan.rendered.as_str();
    let exact = match plan.pattern.get() {
        1 => Some(first.to_string()),
        2 => Some(last.to_string()),
        3 => Some(format!("{first} {last}")),
        4 => Some(format!("{last} {first}")),
        5 => Some(format!("{last}, {first}")),
        6 => Some(format!("{last}, {}.", initial(first))),
        11 => Some(format!("{first} {middle} {last}")),
        12 => Some(format!("{first} {}. {last}", initial(middle))),
        13 => Some(format!("{}. {}. {last}", initial(first), initial(middle))),
        14 => Some(format!("{last}, {}. {}.", initial(first), initial(middle))),
        _ => None,
    };
    let ok = match (plan.pattern.get(), exact) {
        (_, Some(expected)) => r == expected,
        (7, None) => r
            .strip_prefix(&format!("{last} "))
            .is_some_and(is_department),
        (8, None) => r
            .split_once('\n')
            .is_some_and(|(d, rest)| is_department(d) && rest == format!("{last} {first}")),
        (9, None) => r
            .strip_prefix(&format!("{last} {first} <{}@", last.to_lowercase()))
            .and_then(|rest| rest.strip_suffix('>'))
            .and_then(|domain| domain.split_once('.'))
            .is_some_and(|(host, tld)| {
                host.len() == 5
                    && tld.len() == 2
                    && host
                        .bytes()
                        .chain(tld.bytes())
                        .all(|b| b.is_ascii_lowercase())
            }),
        (10, None) => {
            let words: Vec<&str> = r.split(' ').collect();
            words.len() == 4
                && ["old", "TODO", "remember", "new"].contains(&words[0])
                && ["Executive", "CEO", "Chief", "Admin"].contains(&words[1])
                && words[2] == last
                && words[3] == first
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(format!(
            "pattern {} rendered {r:?} for {person}",
            plan.pattern.get()
        ))
    }
}

fn consistent(candidate: &Person, target: &Person, full: &BTreeSet<NameField>) -> bool {
    full.iter().all(|&f| candidate.name(f) == target.name(f))
}

/// Verifies every generator invariant on one corpus; returns all violations.
pub fn generator_violations(config: &GeneratorConfig, corpus: &GeneratedCorpus) -> Vec<String> {
    let gt = &corpus.ground_truth;
    let mut v = Vec::new();
    let person_of: BTreeMap<PersonId, &Person> = gt.index.iter().map(|(id, p)| (*id, p)).collect();

    // index structure
    if gt.index.len() != config.num_persons {
        v.push(format!("index has {} persons", gt.index.len()));
    }
    let middles = gt
        .index
        .iter()
        .filter(|(_, p)| p.middle_name().is_some())
        .count();
    if middles != config.num_middle_names {
        v.push(format!(
            "{middles} middle names, expected {}",
            config.num_middle_names
        ));
    }
    let group = config
        .ambiguity_group_size
        .unwrap_or(config.ambiguity_degree.max(2));
    for field in [NameField::First, NameField::Last] {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for (_, p) in &gt.index {
            *counts.entry(p.name(field).unwrap()).or_default() += 1;
        }
        let shared: Vec<usize> = counts.values().copied().filter(|&c| c > 1).collect();
        if shared.len() != config.ambiguity_degree || shared.iter().any(|&c| c != group) {
            v.push(format!("{field:?} names shared as {shared:?}"));
        }
    }
    for (_, p) in &gt.index {
        if let Some(m) = p.middle_name() {
            let clash = gt
                .index
                .iter()
                .any(|(_, q)| q.first_name() == Some(m) || q.last_name() == Some(m));
            if clash {
                v.push(format!("middle name of {p} is also a first/last name"));
            }
        }
    }

    // mentions
    if corpus.mentions.len() != gt.texts.len() || gt.texts.len() != config.num_texts {
        v.push("text count mismatch".into());
    }
    let cap = config.max_mentions_per_text.max(1);
    let mut seen_person: BTreeSet<PersonId> = BTreeSet::new();
    let mut expected_r: BTreeSet<MentionRelation> = BTreeSet::new();
    let mut expected_a: Vec<AmbiguityEntry> = Vec::new();
    for (text, plans) in gt.texts.iter().zip(&corpus.mentions) {
        if plans.is_empty() || plans.len() > cap {
            v.push(format!("text {} has {} mentions", text.id, plans.len()));
        }
        if config.max_mentions_per_text == 0
            && plans.len() == 1
            && text.content != plans[0].rendered
        {
            v.push(format!("single-mention text {} was decorated", text.id));
        }
        let distinct: BTreeSet<PersonId> = plans.iter().map(|p| p.person_id).collect();
        if distinct.len() != plans.len() {
            v.push(format!("text {} repeats a person", text.id));
        }
        for plan in plans {
            let Some(person) = person_of.get(&plan.person_id) else {
                v.push(format!("mention of unknown person {}", plan.person_id));
                continue;
            };
            let pattern = plan.pattern.get();
            if let Err(e) = check_rendering(person, plan) {
                v.push(e);
            }
            if !text.content.contains(&plan.rendered) {
                v.push(format!(
                    "text {} lacks mention {:?}",
                    text.id, plan.rendered
                ));
            }
            let has_middle = person.middle_name().is_some();
            if has_middle != (pattern >= 11) {
                v.push(format!("{person} mentioned with pattern {pattern}"));
            }
            if seen_person.insert(plan.person_id) && has_middle && pattern != 11 {
                v.push(format!("first mention of {person} used pattern {pattern}"));
            }
            let full = columns(pattern);
            if plan.fully_mentioned != full {
                v.push(format!(
                    "pattern {pattern} fully_mentioned {:?}",
                    plan.fully_mentioned
                ));
            }
            let candidates: BTreeSet<PersonId> = gt
                .index
                .iter()
                .filter(|(_, q)| consistent(q, person, &full))
                .map(|(id, _)| *id)
                .collect();
            match candidates.len() {
                0 => v.push(format!("mention {:?} matches nobody", plan.rendered)),
                1 => {
                    expected_r.insert(MentionRelation::new(text.id, plan.person_id));
                }
                _ => {
                    if full.len() == 1 {
                        let name = person.name(*full.first().unwrap()).unwrap();
                        if plan.reason() != name {
                            v.push(format!("reason {:?} should be {name:?}", plan.reason()));
                        }
                    }
                    expected_a.push(AmbiguityEntry {
                        text_id: text.id,
                        reason: plan.reason().to_string(),
                        person_ids: candidates,
                    });
                }
            }
        }
    }
    if expected_r != gt.relations {
        v.push(format!(
            "relations differ from re-scan: {} expected, {} recorded",
            expected_r.len(),
            gt.relations.len()
        ));
    }
    let mut recorded_a = gt.ambiguities.clone();
    recorded_a.sort();
    expected_a.sort();
    if expected_a != recorded_a {
        v.push("ambiguities differ from re-scan".into());
    }
    for entry in &gt.ambiguities {
        let content = &gt
            .texts
            .iter()
            .find(|t| t.id == entry.text_id)
            .unwrap()
            .content;
        if !content.contains(&entry.reason) {
            v.push(format!(
                "reason {:?} not in text {}",
                entry.reason, entry.text_id
            ));
        }
    }

    // coverage
    let mut covered: BTreeSet<PersonId> = gt.relations.iter().map(|r| r.person_id).collect();
    for entry in &gt.ambiguities {
        covered.extend(entry.person_ids.iter().copied());
    }
    for (id, p) in &gt.index {
        if !covered.contains(id) {
            v.push(format!("{p} never mentioned"));
        }
    }
    v
}

/// The nine metrics computed straight from the definitions with nested loops.
pub fn brute_force_metrics(gt: &GroundTruth, out: &AlgorithmOutput) -> [Option<f64>; 9] {
    let div = |a: usize, b: usize| {
        if b == 0 {
            None
        } else {
            Some(a as f64 / b as f64)
        }
    };
    let f = |p: Option<f64>, r: Option<f64>| match (p, r) {
        (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
        _ => None,
    };

    let mut gt_sorted: Vec<&IndexEntry> = gt.index.iter().collect();
    gt_sorted.sort_by_key(|(id, _)| *id);
    let mut pairs: Vec<(PersonId, PersonId)> = Vec::new();
    for (gid, gp) in &gt_sorted {
        for (aid, ap) in &out.index {
            if gp.first_name() == ap.first_name()
                && gp.middle_name() == ap.middle_name()
                && gp.last_name() == ap.last_name()
            {
                pairs.push((*gid, *aid));
            }
        }
    }
    let prec_p = div(pairs.len(), out.index.len());
    let rec_p = div(pairs.len(), gt.index.len());

    let mut precs = Vec::new();
    let mut recs = Vec::new();
    for &(gid, aid) in &pairs {
        let r_hat: Vec<TextId> = gt
            .relations
            .iter()
            .filter(|r| r.person_id == gid)
            .map(|r| r.text_id)
            .collect();
        let r_hat_a: Vec<TextId> = out
            .relations
            .iter()
            .filter(|r| r.person_id == aid)
            .map(|r| r.text_id)
            .collect();
        let hits = r_hat.iter().filter(|t| r_hat_a.contains(t)).count();
        if let Some(p) = div(hits, r_hat_a.len()) {
            precs.push(p);
        }
        if let Some(r) = div(hits, r_hat.len()) {
            recs.push(r);
        }
    }
    let avg = |xs: &[f64]| {
        if xs.is_empty() {
            None
        } else {
            let mut s = 0.0;
            for x in xs {
                s += x;
            }
            Some(s / xs.len() as f64)
        }
    };
    let prec_r = avg(&precs);
    let rec_r = avg(&recs);

    let mut a_hat: Vec<(TextId, String, PersonId)> = Vec::new();
    for e in &gt.ambiguities {
        for pid in &e.person_ids {
            let t = (e.text_id, e.reason.clone(), *pid);
            if !a_hat.contains(&t) {
                a_hat.push(t);
            }
        }
    }
    let mut a_hat_a: Vec<(TextId, String, PersonId)> = Vec::new();
    for e in &out.ambiguities {
        for pid in &e.person_ids {
            let t = (e.text_id, e.reason.clone(), *pid);
            if !a_hat_a.contains(&t) {
                a_hat_a.push(t);
            }
        }
    }
    let mut a_hits = 0;
    for (t, r, aid) in &a_hat_a {
        for &(gid, paired) in &pairs {
            if paired == *aid && a_hat.contains(&(*t, r.clone(), gid)) {
                a_hits += 1;
            }
        }
    }
    let prec_a = div(a_hits, a_hat_a.len());
    let rec_a = div(a_hits, a_hat.len());

    [
        prec_p,
        rec_p,
        f(prec_p, rec_p),
        prec_r,
        rec_r,
        f(prec_r, rec_r),
        prec_a,
        rec_a,
        f(prec_a, rec_a),
    ]
}

const FIRSTS: [&str; 4] = ["Ann", "Bob", "Cid", "Dee"];
const LASTS: [&str; 3] = ["Baker", "Cole", "Dunn"];
const MIDDLES: [&str; 2] = ["Lea", "Max"];

fn random_person<R: Rng>(rng: &mut R) -> Person {
    loop {
        let first = rng.random_bool(0.8).then(|| *FIRSTS.choose(rng).unwrap());
        let middle = rng.random_bool(0.2).then(|| *MIDDLES.choose(rng).unwrap());
        let last = rng.random_bool(0.9).then(|| *LASTS.choose(rng).unwrap());
        if let Ok(p) = Person::new(first, middle, last) {
            return p;
        }
    }
}

fn random_index<R: Rng>(rng: &mut R, max: usize) -> Vec<IndexEntry> {
    let n = rng.random_range(0..=max);
    let mut persons: Vec<Person> = Vec::new();
    while persons.len() < n {
        let p = random_person(rng);
        if !persons.contains(&p) {
            persons.push(p);
        }
    }
    // ids deliberately sparse and shuffled
    let mut ids: Vec<u64> = (0..20).collect();
    rand::seq::SliceRandom::shuffle(ids.as_mut_slice(), rng);
    persons
        .into_iter()
        .zip(ids)
        .map(|(p, id)| (PersonId(id), p))
        .collect()
}

fn random_links<R: Rng>(
    rng: &mut R,
    texts: &[TextId],
    index: &[IndexEntry],
) -> (BTreeSet<MentionRelation>, Vec<AmbiguityEntry>) {
    let mut relations = BTreeSet::new();
    let mut ambiguities = Vec::new();
    if index.is_empty() || texts.is_empty() {
        return (relations, ambiguities);
    }
    for _ in 0..rng.random_range(0..12) {
        let t = *texts.choose(rng).unwrap();
        let (pid, _) = index.choose(rng).unwrap();
        relations.insert(MentionRelation::new(t, *pid));
    }
    if index.len() >= 2 {
        for _ in 0..rng.random_range(0..4) {
            let t = *texts.choose(rng).unwrap();
            let k = rng.random_range(2..=index.len());
            let ids: Vec<PersonId> = index.choose_multiple(rng, k).map(|(id, _)| *id).collect();
            let reason = *["Baker", "Ann", "Cole"].choose(rng).unwrap();
            ambiguities.push(AmbiguityEntry::new(t, reason, ids));
        }
    }
    (relations, ambiguities)
}

/// A small random ground truth (≤ 5 persons, ≤ 10 texts) and an algorithm
/// output over the same texts that partly overlaps with it.
pub fn random_instance<R: Rng>(rng: &mut R) -> (GroundTruth, AlgorithmOutput) {
    let n_texts = rng.random_range(1..=10);
    let texts: Vec<ShortText> = (0..n_texts)
        .map(|i| ShortText::new(TextId(i), "Ann Baker; Cole, Bob; Dunn Cid"))
        .collect();
    let text_ids: Vec<TextId> = texts.iter().map(|t| t.id).collect();

    let gt_index = random_index(rng, 5);
    let (gt_rel, gt_amb) = random_links(rng, &text_ids, &gt_index);
    let gt = GroundTruth {
        texts,
        index: gt_index.clone(),
        relations: gt_rel.clone(),
        ambiguities: gt_amb.clone(),
    };

    let out = if rng.random_bool(0.3) {
        // start from the truth, renumber, then perturb
        let shift = 100;
        let renumber = |id: PersonId| PersonId(id.0 + shift);
        let mut index: Vec<IndexEntry> = gt_index
            .iter()
            .map(|(id, p)| (renumber(*id), p.clone()))
            .collect();
        if !index.is_empty() && rng.random_bool(0.5) {
            let drop = rng.random_range(0..index.len());
            index.remove(drop);
        }
        let kept: BTreeSet<PersonId> = index.iter().map(|(id, _)| *id).collect();
        let mut relations: BTreeSet<MentionRelation> = gt_rel
            .iter()
            .map(|r| MentionRelation::new(r.text_id, renumber(r.person_id)))
            .filter(|r| kept.contains(&r.person_id))
            .collect();
        let (extra_rel, extra_amb) = random_links(rng, &text_ids, &index);
        relations.extend(extra_rel.into_iter().filter(|_| rng.random_bool(0.3)));
        let mut ambiguities: Vec<AmbiguityEntry> = gt_amb
            .iter()
            .map(|e| AmbiguityEntry {
                text_id: e.text_id,
                reason: e.reason.clone(),
                person_ids: e
                    .person_ids
                    .iter()
                    .map(|id| renumber(*id))
                    .filter(|id| kept.contains(id))
                    .collect(),
            })
            .filter(|e| e.person_ids.len() >= 2)
            .collect();
        ambiguities.extend(extra_amb);
        AlgorithmOutput {
            index,
            relations,
            ambiguities,
        }
    } else {
        let index = random_index(rng, 6);
        let (relations, ambiguities) = random_links(rng, &text_ids, &index);
        AlgorithmOutput {
            index,
            relations,
            ambiguities,
        }
    };
    (gt, out)
}
