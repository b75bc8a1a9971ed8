//! CSV persistence of ground truth and extractor output.
//!
//! | file              | columns                                        |
//! |-------------------|------------------------------------------------|
//! | `texts.csv`       | `text_id,text`                                 |
//! | `persons.csv`     | `person_id,first_name,middle_name,last_name`   |
//! | `relations.csv`   | `text_id,person_id`                            |
//! | `ambiguities.csv` | `text_id,reason,person_ids`                    |
//!
//! Absent names are empty fields. `person_ids` lists ascending ids joined by
//! `|`. Fields are quoted only when they contain a comma, quote or line break;
//! records end with a single `\n`.

use std::collections::BTreeSet;
use std::fs::{self, File};
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use csv::{QuoteStyle, ReaderBuilder, StringRecord, Terminator, WriterBuilder};
use person_index::model::IndexEntry;
use person_index::{
    AlgorithmOutput, AmbiguityEntry, GroundTruth, MentionRelation, Person, PersonId, ShortText,
    TextId,
};

use crate::error::CliError;

pub const TEXTS_FILE: &str = "texts.csv";
pub const PERSONS_FILE: &str = "persons.csv";
pub const RELATIONS_FILE: &str = "relations.csv";
pub const AMBIGUITIES_FILE: &str = "ambiguities.csv";

const TEXTS_HEADER: [&str; 2] = ["text_id", "text"];
const PERSONS_HEADER: [&str; 4] = ["person_id", "first_name", "middle_name", "last_name"];
const RELATIONS_HEADER: [&str; 2] = ["text_id", "person_id"];
const AMBIGUITIES_HEADER: [&str; 3] = ["text_id", "reason", "person_ids"];

/// The four file locations of a corpus directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusFiles {
    pub texts_path: PathBuf,
    pub persons_path: PathBuf,
    pub relations_path: PathBuf,
    pub ambiguities_path: PathBuf,
}

impl CorpusFiles {
    pub fn in_dir(dir: &Path) -> Self {
        CorpusFiles {
            texts_path: dir.join(TEXTS_FILE),
            persons_path: dir.join(PERSONS_FILE),
            relations_path: dir.join(RELATIONS_FILE),
            ambiguities_path: dir.join(AMBIGUITIES_FILE),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    WriterBuilder::new()
        .quote_style(QuoteStyle::Necessary)
        .terminator(Terminator::Any(b'\n'))
        .from_writer(w)
}

fn write_err(label: &Path, e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(label, io),
        other => CliError::data(label, format!("{other:?}")),
    }
}

fn write_rows<W, I, R>(w: W, label: &Path, header: &[&str], rows: I) -> Result<()>
where
    W: Write,
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut writer = csv_writer(w);
    writer
        .write_record(header)
        .map_err(|e| write_err(label, e))?;
    for row in rows {
        writer.write_record(row).map_err(|e| write_err(label, e))?;
    }
    writer.flush().map_err(|e| CliError::io(label, e))
}

pub fn write_texts<W: Write>(w: W, label: &Path, texts: &[ShortText]) -> Result<()> {
    write_rows(
        w,
        label,
        &TEXTS_HEADER,
        texts.iter().map(|t| [t.id.to_string(), t.content.clone()]),
    )
}

pub fn write_persons<W: Write>(w: W, label: &Path, index: &[IndexEntry]) -> Result<()> {
    let name = |n: Option<&str>| n.unwrap_or_default().to_string();
    write_rows(
        w,
        label,
        &PERSONS_HEADER,
        index.iter().map(|(id, p)| {
            [
                id.to_string(),
                name(p.first_name()),
                name(p.middle_name()),
                name(p.last_name()),
            ]
        }),
    )
}

pub fn write_relations<W: Write>(
    w: W,
    label: &Path,
    relations: &BTreeSet<MentionRelation>,
) -> Result<()> {
    write_rows(
        w,
        label,
        &RELATIONS_HEADER,
        relations
            .iter()
            .map(|r| [r.text_id.to_string(), r.person_id.to_string()]),
    )
}

pub fn write_ambiguities<W: Write>(w: W, label: &Path, entries: &[AmbiguityEntry]) -> Result<()> {
    write_rows(
        w,
        label,
        &AMBIGUITIES_HEADER,
        entries.iter().map(|e| {
            let ids: Vec<String> = e.person_ids.iter().map(ToString::to_string).collect();
            [e.text_id.to_string(), e.reason.clone(), ids.join("|")]
        }),
    )
}

/// Reads every data record, checking the header and the column count. Each
/// record comes with its 1-based line number.
fn read_rows<R: Read>(r: R, label: &Path, header: &[&str]) -> Result<Vec<(u64, StringRecord)>> {
    let mut reader = ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(r);
    let found = reader.headers().map_err(|e| read_err(label, e))?.clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(CliError::data(
            label,
            format!(
                "line 1: expected header {:?}, found {:?}",
                header.join(","),
                found.iter().collect::<Vec<_>>().join(",")
            ),
        ));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| read_err(label, e))?;
        let line = record.position().map_or(0, |p| p.line());
        rows.push((line, record));
    }
    Ok(rows)
}

fn read_err(label: &Path, e: csv::Error) -> CliError {
    let line = e.position().map(|p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(label, io),
        csv::ErrorKind::UnequalLengths {
            pos,
            expected_len,
            len,
        } => CliError::data(
            label,
            format!(
                "line {}: expected {expected_len} fields, found {len}",
                pos.map_or(0, |p| p.line())
            ),
        ),
        csv::ErrorKind::Utf8 { pos, err } => CliError::data(
            label,
            format!("line {}: {err}", pos.map_or(0, |p| p.line())),
        ),
        other => CliError::data(label, format!("line {}: {other:?}", line.unwrap_or(0))),
    }
}

fn parse_id(label: &Path, line: u64, column: &str, value: &str) -> Result<u64> {
    value
        .parse()
        .map_err(|_| CliError::data(label, format!("line {line}: invalid {column} {value:?}")))
}

pub fn read_texts<R: Read>(r: R, label: &Path) -> Result<Vec<ShortText>> {
    read_rows(r, label, &TEXTS_HEADER)?
        .into_iter()
        .map(|(line, rec)| {
            let id = parse_id(label, line, "text_id", &rec[0])?;
            if rec[1].is_empty() {
                return Err(CliError::data(label, format!("line {line}: empty text")));
            }
            Ok(ShortText::new(TextId(id), &rec[1]))
        })
        .collect()
}

pub fn read_persons<R: Read>(r: R, label: &Path) -> Result<Vec<IndexEntry>> {
    read_rows(r, label, &PERSONS_HEADER)?
        .into_iter()
        .map(|(line, rec)| {
            let id = parse_id(label, line, "person_id", &rec[0])?;
            let person = Person::from_parts(&rec[1], &rec[2], &rec[3])
                .map_err(|e| CliError::data(label, format!("line {line}: {e}")))?;
            Ok((PersonId(id), person))
        })
        .collect()
}

pub fn read_relations<R: Read>(r: R, label: &Path) -> Result<BTreeSet<MentionRelation>> {
    let mut relations = BTreeSet::new();
    for (line, rec) in read_rows(r, label, &RELATIONS_HEADER)? {
        let text = parse_id(label, line, "text_id", &rec[0])?;
        let person = parse_id(label, line, "person_id", &rec[1])?;
        if !relations.insert(MentionRelation::new(TextId(text), PersonId(person))) {
            return Err(CliError::data(
                label,
                format!("line {line}: duplicate relation ({text}, {person})"),
            ));
        }
    }
    Ok(relations)
}

pub fn read_ambiguities<R: Read>(r: R, label: &Path) -> Result<Vec<AmbiguityEntry>> {
    read_rows(r, label, &AMBIGUITIES_HEADER)?
        .into_iter()
        .map(|(line, rec)| {
            let text = parse_id(label, line, "text_id", &rec[0])?;
            let ids = rec[2]
                .split('|')
                .map(|id| parse_id(label, line, "person id", id).map(PersonId))
                .collect::<Result<BTreeSet<_>>>()?;
            Ok(AmbiguityEntry {
                text_id: TextId(text),
                reason: rec[1].to_string(),
                person_ids: ids,
            })
        })
        .collect()
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| CliError::io(path, e))
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

/// Writes the index, relation and ambiguity files into `dir`.
pub fn write_output(dir: &Path, out: &AlgorithmOutput) -> Result<()> {
    ensure_dir(dir)?;
    let files = CorpusFiles::in_dir(dir);
    write_persons(
        create(&files.persons_path)?,
        &files.persons_path,
        &out.index,
    )?;
    write_relations(
        create(&files.relations_path)?,
        &files.relations_path,
        &out.relations,
    )?;
    write_ambiguities(
        create(&files.ambiguities_path)?,
        &files.ambiguities_path,
        &out.ambiguities,
    )
}

/// Writes all four ground-truth files into `dir`.
pub fn write_ground_truth(dir: &Path, gt: &GroundTruth) -> Result<()> {
    ensure_dir(dir)?;
    let files = CorpusFiles::in_dir(dir);
    write_texts(create(&files.texts_path)?, &files.texts_path, &gt.texts)?;
    write_persons(create(&files.persons_path)?, &files.persons_path, &gt.index)?;
    write_relations(
        create(&files.relations_path)?,
        &files.relations_path,
        &gt.relations,
    )?;
    write_ambiguities(
        create(&files.ambiguities_path)?,
        &files.ambiguities_path,
        &gt.ambiguities,
    )
}

pub fn read_texts_file(path: &Path) -> Result<Vec<ShortText>> {
    read_texts(open(path)?, path)
}

/// Reads the three output files from `dir`.
pub fn read_output(dir: &Path) -> Result<AlgorithmOutput> {
    let files = CorpusFiles::in_dir(dir);
    Ok(AlgorithmOutput {
        index: read_persons(open(&files.persons_path)?, &files.persons_path)?,
        relations: read_relations(open(&files.relations_path)?, &files.relations_path)?,
        ambiguities: read_ambiguities(open(&files.ambiguities_path)?, &files.ambiguities_path)?,
    })
}

/// Reads all four ground-truth files from `dir`.
pub fn read_ground_truth(dir: &Path) -> Result<GroundTruth> {
    let files = CorpusFiles::in_dir(dir);
    let texts = read_texts_file(&files.texts_path)?;
    let out = read_output(dir)?;
    Ok(GroundTruth {
        texts,
        index: out.index,
        relations: out.relations,
        ambiguities: out.ambiguities,
    })
}
