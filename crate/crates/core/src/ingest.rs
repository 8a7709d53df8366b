//! Reading the two assessment exports and turning them into indexed matrices.
//!
//! The student-question-answer export (`SQA.csv`) carries one row per attempted
//! response; the question-topic export (`QT.csv`) carries one row per question
//! with its `;`-separated tag list. A missing SQA row means "not attempted".

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::io::Read;

use thiserror::Error;

use crate::matrix::BinaryMatrix;

pub const SQA_HEADER: [&str; 3] = ["student_id", "question_id", "score"];
pub const QT_HEADER: [&str; 2] = ["question_id", "topics"];
pub const TOPIC_SEPARATOR: char = ';';

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IngestError {
    #[error("{file}: missing header row, expected `{expected}`")]
    MissingHeader {
        file: &'static str,
        expected: String,
    },
    #[error("{file}: bad header at line {line}: expected `{expected}`, found `{found}`")]
    BadHeader {
        file: &'static str,
        line: u64,
        expected: String,
        found: String,
    },
    #[error("{file}: malformed row at line {line}: expected {expected} columns, found {found}")]
    ColumnCount {
        file: &'static str,
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("{file}: empty {field} at line {line}")]
    EmptyField {
        file: &'static str,
        line: u64,
        field: &'static str,
    },
    #[error("SQA: non-binary score at line {line}: `{value}`")]
    NonBinaryScore { line: u64, value: String },
    #[error("SQA: duplicate response for ({student}, {question}) at line {line} (first seen at line {first_line})")]
    DuplicateResponse {
        line: u64,
        first_line: u64,
        student: String,
        question: String,
    },
    #[error("QT: empty topic list for {question} at line {line}")]
    EmptyTopicList { line: u64, question: String },
    #[error("QT: empty topic label for {question} at line {line}")]
    EmptyTopicLabel { line: u64, question: String },
    #[error("QT: duplicate topic {topic} for {question} at line {line}")]
    DuplicateTopic {
        line: u64,
        question: String,
        topic: String,
    },
    #[error(
        "QT: duplicate question row {question} at line {line} (first seen at line {first_line})"
    )]
    DuplicateQuestion {
        line: u64,
        first_line: u64,
        question: String,
    },
    #[error("untagged question {question}: referenced in SQA but absent from QT")]
    UntaggedQuestion { question: String },
    #[error("unknown {kind} identifier {id}")]
    UnknownIdentifier { kind: &'static str, id: String },
    #[error("{file}: {message}")]
    Csv { file: &'static str, message: String },
}

impl IngestError {
    /// 1-based source line the error points at, when there is one.
    pub fn line(&self) -> Option<u64> {
        match self {
            IngestError::BadHeader { line, .. }
            | IngestError::ColumnCount { line, .. }
            | IngestError::EmptyField { line, .. }
            | IngestError::NonBinaryScore { line, .. }
            | IngestError::DuplicateResponse { line, .. }
            | IngestError::EmptyTopicList { line, .. }
            | IngestError::EmptyTopicLabel { line, .. }
            | IngestError::DuplicateTopic { line, .. }
            | IngestError::DuplicateQuestion { line, .. } => Some(*line),
            _ => None,
        }
    }
}

/// One attempted response.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResponseRecord {
    pub student_id: String,
    pub question_id: String,
    pub correct: bool,
}

impl ResponseRecord {
    pub fn new(
        student_id: impl Into<String>,
        question_id: impl Into<String>,
        correct: bool,
    ) -> Self {
        Self {
            student_id: student_id.into(),
            question_id: question_id.into(),
            correct,
        }
    }

    pub fn score(&self) -> u8 {
        u8::from(self.correct)
    }
}

/// A question and the exact set of topics it is tagged with.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TagRecord {
    pub question_id: String,
    pub topics: BTreeSet<String>,
}

impl TagRecord {
    pub fn new<I, S>(question_id: impl Into<String>, topics: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            question_id: question_id.into(),
            topics: topics.into_iter().map(Into::into).collect(),
        }
    }
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input)
}

/// Yields `(line, record)` pairs after validating the header row.
fn records<R: Read>(
    input: R,
    file: &'static str,
    header: &[&str],
) -> Result<Vec<(u64, csv::StringRecord)>, IngestError> {
    let mut rdr = reader(input);
    let mut rows = rdr.records();
    let expected = header.join(",");
    let first = match rows.next() {
        None => return Err(IngestError::MissingHeader { file, expected }),
        Some(r) => r.map_err(|e| csv_error(file, e))?,
    };
    let line = first.position().map_or(1, |p| p.line());
    // Tolerate a UTF-8 byte order mark on the first cell.
    let found: Vec<&str> = first
        .iter()
        .enumerate()
        .map(|(i, f)| {
            if i == 0 {
                f.trim_start_matches('\u{feff}')
            } else {
                f
            }
        })
        .collect();
    if found != header {
        return Err(IngestError::BadHeader {
            file,
            line,
            expected,
            found: found.join(","),
        });
    }
    let mut out = Vec::new();
    for row in rows {
        let row = row.map_err(|e| csv_error(file, e))?;
        // A line holding only whitespace trims to a single empty field.
        if row.len() == 1 && row[0].is_empty() {
            continue;
        }
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != header.len() {
            return Err(IngestError::ColumnCount {
                file,
                line,
                expected: header.len(),
                found: row.len(),
            });
        }
        out.push((line, row));
    }
    Ok(out)
}

fn csv_error(file: &'static str, e: csv::Error) -> IngestError {
    let message = match e.position() {
        Some(p) => format!("line {}: {}", p.line(), e),
        None => e.to_string(),
    };
    IngestError::Csv { file, message }
}

fn non_empty<'a>(
    file: &'static str,
    line: u64,
    field: &'static str,
    value: &'a str,
) -> Result<&'a str, IngestError> {
    if value.is_empty() {
        Err(IngestError::EmptyField { file, line, field })
    } else {
        Ok(value)
    }
}

/// Parses an SQA export. Rows are returned in file order.
pub fn parse_sqa<R: Read>(input: R) -> Result<Vec<ResponseRecord>, IngestError> {
    let mut seen: HashMap<(String, String), u64> = HashMap::new();
    let mut out = Vec::new();
    for (line, row) in records(input, "SQA", &SQA_HEADER)? {
        let student = non_empty("SQA", line, "student_id", &row[0])?;
        let question = non_empty("SQA", line, "question_id", &row[1])?;
        let correct = match &row[2] {
            "0" => false,
            "1" => true,
            other => {
                return Err(IngestError::NonBinaryScore {
                    line,
                    value: other.to_string(),
                })
            }
        };
        let key = (student.to_string(), question.to_string());
        if let Some(&first_line) = seen.get(&key) {
            return Err(IngestError::DuplicateResponse {
                line,
                first_line,
                student: key.0,
                question: key.1,
            });
        }
        seen.insert(key, line);
        out.push(ResponseRecord::new(student, question, correct));
    }
    Ok(out)
}

/// Parses a QT export; the topics column is a `;`-separated list.
pub fn parse_qt<R: Read>(input: R) -> Result<Vec<TagRecord>, IngestError> {
    let mut seen: HashMap<String, u64> = HashMap::new();
    let mut out = Vec::new();
    for (line, row) in records(input, "QT", &QT_HEADER)? {
        let question = non_empty("QT", line, "question_id", &row[0])?.to_string();
        if row[1].is_empty() {
            return Err(IngestError::EmptyTopicList { line, question });
        }
        let mut topics = BTreeSet::new();
        for label in row[1].split(TOPIC_SEPARATOR).map(str::trim) {
            if label.is_empty() {
                return Err(IngestError::EmptyTopicLabel { line, question });
            }
            if !topics.insert(label.to_string()) {
                return Err(IngestError::DuplicateTopic {
                    line,
                    question,
                    topic: label.to_string(),
                });
            }
        }
        if let Some(&first_line) = seen.get(&question) {
            return Err(IngestError::DuplicateQuestion {
                line,
                first_line,
                question,
            });
        }
        seen.insert(question.clone(), line);
        out.push(TagRecord {
            question_id: question,
            topics,
        });
    }
    Ok(out)
}

/// Bijection between identifiers and contiguous indices, in byte order of the identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IdIndex {
    ids: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl IdIndex {
    pub fn from_ids<I, S>(ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let ids: Vec<String> = ids
            .into_iter()
            .map(Into::into)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let lookup = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        Self { ids, lookup }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.lookup.get(id).copied()
    }

    pub fn id(&self, index: usize) -> &str {
        &self.ids[index]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }
}

/// Question, student and topic dictionaries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexMaps {
    pub questions: IdIndex,
    pub students: IdIndex,
    pub topics: IdIndex,
}

pub fn build_index_maps(
    responses: &[ResponseRecord],
    tags: &[TagRecord],
) -> Result<IndexMaps, IngestError> {
    let tagged: HashSet<&str> = tags.iter().map(|t| t.question_id.as_str()).collect();
    // Report the smallest offending identifier so the message does not depend on row order.
    if let Some(q) = responses
        .iter()
        .map(|r| r.question_id.as_str())
        .filter(|q| !tagged.contains(q))
        .min()
    {
        return Err(IngestError::UntaggedQuestion {
            question: q.to_string(),
        });
    }
    Ok(IndexMaps {
        questions: IdIndex::from_ids(tags.iter().map(|t| t.question_id.as_str())),
        students: IdIndex::from_ids(responses.iter().map(|r| r.student_id.as_str())),
        topics: IdIndex::from_ids(
            tags.iter()
                .flat_map(|t| t.topics.iter().map(String::as_str)),
        ),
    })
}

/// The three working tables.
///
/// `tags` is question x topic. `correct` and `attempted` are student x question;
/// the attempt table is the one some texts call `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkingMatrices {
    pub tags: BinaryMatrix,
    pub correct: BinaryMatrix,
    pub attempted: BinaryMatrix,
}

impl WorkingMatrices {
    /// Total number of attempted responses.
    pub fn attempt_count(&self) -> u64 {
        self.attempted.total()
    }

    /// Reconstructs canonical record lists (sorted by identifier) from the tables.
    pub fn to_records(&self, maps: &IndexMaps) -> (Vec<ResponseRecord>, Vec<TagRecord>) {
        let mut responses = Vec::new();
        for u in 0..self.attempted.rows() {
            for i in self.attempted.row_ones(u) {
                responses.push(ResponseRecord::new(
                    maps.students.id(u),
                    maps.questions.id(i),
                    self.correct.get(u, i),
                ));
            }
        }
        let tags = (0..self.tags.rows())
            .map(|i| {
                TagRecord::new(
                    maps.questions.id(i),
                    self.tags.row_ones(i).map(|j| maps.topics.id(j)),
                )
            })
            .collect();
        (canonical_responses(responses), tags)
    }
}

pub fn build_matrices(
    responses: &[ResponseRecord],
    tags: &[TagRecord],
    maps: &IndexMaps,
) -> Result<WorkingMatrices, IngestError> {
    let unknown = |kind: &'static str, id: &str| IngestError::UnknownIdentifier {
        kind,
        id: id.to_string(),
    };
    let (nq, ns, nt) = (maps.questions.len(), maps.students.len(), maps.topics.len());
    let mut tag_m = BinaryMatrix::zeros(nq, nt);
    for rec in tags {
        let i = maps
            .questions
            .index_of(&rec.question_id)
            .ok_or_else(|| unknown("question", &rec.question_id))?;
        for topic in &rec.topics {
            let j = maps
                .topics
                .index_of(topic)
                .ok_or_else(|| unknown("topic", topic))?;
            tag_m.set(i, j, true);
        }
    }
    let mut correct = BinaryMatrix::zeros(ns, nq);
    let mut attempted = BinaryMatrix::zeros(ns, nq);
    for rec in responses {
        let u = maps
            .students
            .index_of(&rec.student_id)
            .ok_or_else(|| unknown("student", &rec.student_id))?;
        let i = maps
            .questions
            .index_of(&rec.question_id)
            .ok_or_else(|| unknown("question", &rec.question_id))?;
        attempted.set(u, i, true);
        correct.set(u, i, rec.correct);
    }
    Ok(WorkingMatrices {
        tags: tag_m,
        correct,
        attempted,
    })
}

/// Parsed and indexed input, ready for model construction.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub responses: Vec<ResponseRecord>,
    pub tags: Vec<TagRecord>,
    pub maps: IndexMaps,
    pub matrices: WorkingMatrices,
}

impl Dataset {
    pub fn from_records(
        responses: Vec<ResponseRecord>,
        tags: Vec<TagRecord>,
    ) -> Result<Self, IngestError> {
        let maps = build_index_maps(&responses, &tags)?;
        let matrices = build_matrices(&responses, &tags, &maps)?;
        Ok(Self {
            responses,
            tags,
            maps,
            matrices,
        })
    }

    pub fn from_csv<R1: Read, R2: Read>(sqa: R1, qt: R2) -> Result<Self, IngestError> {
        let responses = parse_sqa(sqa)?;
        let tags = parse_qt(qt)?;
        Self::from_records(responses, tags)
    }
}

fn canonical_responses(mut records: Vec<ResponseRecord>) -> Vec<ResponseRecord> {
    records.sort();
    records
}

/// Canonical SQA text: header, rows sorted by (student, question), LF endings.
pub fn write_sqa(records: &[ResponseRecord]) -> String {
    let mut out = format!("{}\n", SQA_HEADER.join(","));
    for r in canonical_responses(records.to_vec()) {
        let _ = writeln!(out, "{},{},{}", r.student_id, r.question_id, r.score());
    }
    out
}

/// Canonical QT text: header, rows sorted by question, topics sorted and `;`-joined.
pub fn write_qt(records: &[TagRecord]) -> String {
    let mut rows: Vec<&TagRecord> = records.iter().collect();
    rows.sort_by(|a, b| a.question_id.cmp(&b.question_id));
    let mut out = format!("{}\n", QT_HEADER.join(","));
    for r in rows {
        let topics: Vec<&str> = r.topics.iter().map(String::as_str).collect();
        let _ = writeln!(out, "{},{}", r.question_id, topics.join(";"));
    }
    out
}
