//! Test support: a brute-force oracle for the model's edge table, small random
//! data sets, random filter queries and CSV row shuffling.
//!
//! The oracle shares nothing with the engine beyond the record types. It reads
//! CSV by splitting on commas, enumerates every non-empty topic subset and
//! scans every (student, question) cell for an exact tag-set match.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;
use tdm_core::ingest::{ResponseRecord, TagRecord};
use tdm_core::Tdm;

/// Sorted topic labels to `(coverage, correct)`.
pub type EdgeTable = BTreeMap<Vec<String>, (u64, u64)>;

#[derive(Debug, Clone, Default)]
pub struct RawData {
    /// `(student, question, score)`.
    pub sqa: Vec<(String, String, u8)>,
    /// `(question, topics)`.
    pub qt: Vec<(String, Vec<String>)>,
}

fn rows(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .skip(1)
        .map(str::trim)
        .filter(|l| !l.is_empty())
}

/// Reads the two exports with plain string splitting.
pub fn parse_raw(sqa: &str, qt: &str) -> RawData {
    let sqa = rows(sqa)
        .map(|l| {
            let f: Vec<&str> = l.split(',').map(str::trim).collect();
            (
                f[0].to_string(),
                f[1].to_string(),
                f[2].parse().expect("0 or 1"),
            )
        })
        .collect();
    let qt = rows(qt)
        .map(|l| {
            let (q, topics) = l.split_once(',').expect("two columns");
            let topics = topics.split(';').map(|t| t.trim().to_string()).collect();
            (q.trim().to_string(), topics)
        })
        .collect();
    RawData { sqa, qt }
}

pub fn raw_from_records(responses: &[ResponseRecord], tags: &[TagRecord]) -> RawData {
    RawData {
        sqa: responses
            .iter()
            .map(|r| {
                (
                    r.student_id.clone(),
                    r.question_id.clone(),
                    u8::from(r.correct),
                )
            })
            .collect(),
        qt: tags
            .iter()
            .map(|t| (t.question_id.clone(), t.topics.iter().cloned().collect()))
            .collect(),
    }
}

fn subset_sums(raw: &RawData) -> Vec<(Vec<String>, u64, u64, bool)> {
    let universe: Vec<String> = raw
        .qt
        .iter()
        .flat_map(|(_, t)| t.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert!(universe.len() <= 16, "oracle enumerates 2^|topics| subsets");
    let students: BTreeSet<&str> = raw.sqa.iter().map(|(s, _, _)| s.as_str()).collect();
    let cells: HashMap<(&str, &str), u8> = raw
        .sqa
        .iter()
        .map(|(s, q, v)| ((s.as_str(), q.as_str()), *v))
        .collect();
    let tag_sets: Vec<(&str, BTreeSet<&str>)> = raw
        .qt
        .iter()
        .map(|(q, t)| (q.as_str(), t.iter().map(String::as_str).collect()))
        .collect();

    let mut out = Vec::new();
    for mask in 1u32..(1 << universe.len()) {
        let subset: BTreeSet<&str> = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, t)| t.as_str())
            .collect();
        let (mut coverage, mut correct, mut tagged) = (0u64, 0u64, false);
        for (q, tags) in &tag_sets {
            if *tags != subset {
                continue;
            }
            tagged = true;
            for s in &students {
                if let Some(&v) = cells.get(&(*s, *q)) {
                    coverage += 1;
                    correct += u64::from(v);
                }
            }
        }
        let labels = subset.into_iter().map(str::to_string).collect();
        out.push((labels, coverage, correct, tagged));
    }
    out
}

/// Every topic subset with at least one attempted, exactly-tagged response.
pub fn oracle_table(raw: &RawData) -> EdgeTable {
    subset_sums(raw)
        .into_iter()
        .filter(|(_, c, _, _)| *c > 0)
        .map(|(l, c, k, _)| (l, (c, k)))
        .collect()
}

/// Tag sets that some question carries but nobody attempted.
pub fn oracle_zero_coverage(raw: &RawData) -> BTreeSet<Vec<String>> {
    subset_sums(raw)
        .into_iter()
        .filter(|(_, c, _, tagged)| *tagged && *c == 0)
        .map(|(l, ..)| l)
        .collect()
}

/// The engine's edges in the oracle's shape.
pub fn engine_table(tdm: &Tdm) -> EdgeTable {
    tdm.hyperedges()
        .iter()
        .map(|e| {
            let a = e.achievement();
            assert_eq!(
                a.denominator(),
                e.coverage,
                "achievement denominator is the coverage"
            );
            let labels = tdm
                .labels(&e.topics)
                .into_iter()
                .map(str::to_string)
                .collect();
            (labels, (e.coverage, a.numerator()))
        })
        .collect()
}

pub fn engine_zero_coverage(tdm: &Tdm) -> BTreeSet<Vec<String>> {
    tdm.zero_coverage_sets()
        .iter()
        .map(|s| tdm.labels(s).into_iter().map(str::to_string).collect())
        .collect()
}

/// Labels chosen so byte order differs from natural order.
const TOPIC_POOL: [&str; 12] = [
    "T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "T10", "alg", "Geo", "z_9",
];

/// Random data set with up to 8 topics, 12 questions and 10 students.
/// Tag sets are often shared and some questions go unattempted.
pub fn random_records<R: Rng>(rng: &mut R) -> (Vec<ResponseRecord>, Vec<TagRecord>) {
    random_records_sized(rng, 8, 12, 10)
}

pub fn random_records_sized<R: Rng>(
    rng: &mut R,
    max_topics: usize,
    max_questions: usize,
    max_students: usize,
) -> (Vec<ResponseRecord>, Vec<TagRecord>) {
    let n_topics = rng.gen_range(1..=max_topics.min(TOPIC_POOL.len()));
    let topics: Vec<&str> = TOPIC_POOL.choose_multiple(rng, n_topics).copied().collect();
    let n_questions = rng.gen_range(1..=max_questions);
    let n_students = rng.gen_range(1..=max_students);
    let attempt_p = rng.gen_range(0.2..=1.0);

    let mut sets: Vec<Vec<&str>> = Vec::new();
    for _ in 0..n_questions {
        let set = if !sets.is_empty() && rng.gen_bool(0.3) {
            sets[rng.gen_range(0..sets.len())].clone()
        } else {
            let arity = rng.gen_range(1..=n_topics.min(4));
            topics.choose_multiple(rng, arity).copied().collect()
        };
        sets.push(set);
    }
    let tags = sets
        .iter()
        .enumerate()
        .map(|(i, s)| TagRecord::new(format!("Q{}", i + 1), s.iter().copied()))
        .collect();

    let mut responses = Vec::new();
    for s in 1..=n_students {
        for q in 1..=n_questions {
            if rng.gen_bool(attempt_p) {
                responses.push(ResponseRecord::new(
                    format!("S{s}"),
                    format!("Q{q}"),
                    rng.gen_bool(0.5),
                ));
            }
        }
    }
    (responses, tags)
}

fn threshold<R: Rng>(rng: &mut R) -> (u32, String) {
    let k = rng.gen_range(0..=20u32) * 5;
    (k, format!("{}.{:02}", k / 100, k % 100))
}

/// Random, valid filter query pairs for a model with these topics.
/// With `with_level` false no `level` or `mode` key is produced.
pub fn random_filter_pairs<R: Rng>(
    rng: &mut R,
    topics: &[String],
    with_level: bool,
) -> Vec<(String, String)> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut push = |k: &str, v: String| pairs.push((k.to_string(), v));
    if !topics.is_empty() && rng.gen_bool(0.5) {
        let n = rng.gen_range(1..=topics.len().min(3));
        let chosen: Vec<&str> = topics.choose_multiple(rng, n).map(String::as_str).collect();
        push("topics", chosen.join(","));
        if rng.gen_bool(0.5) {
            push(
                "topic_mode",
                if rng.gen_bool(0.5) { "all" } else { "any" }.into(),
            );
        }
    }
    let extremum = |rng: &mut R| {
        if rng.gen_bool(0.5) {
            "level-min"
        } else {
            "level-max"
        }
        .to_string()
    };
    match rng.gen_range(0..3) {
        1 => {
            let (a, sa) = threshold(rng);
            let (b, sb) = threshold(rng);
            let ((_, lo), (_, hi)) = if a <= b {
                ((a, sa), (b, sb))
            } else {
                ((b, sb), (a, sa))
            };
            match rng.gen_range(0..3) {
                0 => push("achv_min", lo),
                1 => push("achv_max", hi),
                _ => {
                    push("achv_min", lo);
                    push("achv_max", hi);
                }
            }
        }
        2 => push("achv_extremum", extremum(rng)),
        _ => {}
    }
    match rng.gen_range(0..3) {
        1 => {
            let a = rng.gen_range(0..=12u64);
            let b = rng.gen_range(a..=a + 12);
            match rng.gen_range(0..3) {
                0 => push("cov_min", a.to_string()),
                1 => push("cov_max", b.to_string()),
                _ => {
                    push("cov_min", a.to_string());
                    push("cov_max", b.to_string());
                }
            }
        }
        2 => push("cov_extremum", extremum(rng)),
        _ => {}
    }
    if with_level && !topics.is_empty() && rng.gen_bool(0.6) {
        push("level", rng.gen_range(1..=topics.len()).to_string());
        match rng.gen_range(0..3) {
            0 => push("mode", "cumulative".into()),
            1 => push("mode", "accumulative".into()),
            _ => {}
        }
    }
    pairs
}

/// Same rows, header first, body in random order.
pub fn shuffle_rows<R: Rng>(csv: &str, rng: &mut R) -> String {
    let mut lines = csv.lines();
    let header = lines.next().unwrap_or_default();
    let mut body: Vec<&str> = lines.filter(|l| !l.trim().is_empty()).collect();
    body.shuffle(rng);
    let mut out = String::from(header);
    out.push('\n');
    for l in body {
        out.push_str(l);
        out.push('\n');
    }
    out
}
