//! Seeded synthetic assessment data with a built-in constraint checker.
//!
//! Generated data sets satisfy the properties wanted of a demonstration data
//! set: question arities spanning the requested range, spread in student
//! scores, in attempt counts per question, in question averages (a 0% and a
//! 100% question), in hyperedge achievements, and at least two non-empty levels.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{build_tdm, Achievement};
use crate::ingest::{Dataset, ResponseRecord, TagRecord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("infeasible constraints: {0}")]
    Infeasible(String),
    #[error("generated data violates constraints: {}", .0.join("; "))]
    Unsatisfied(Vec<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub students: usize,
    pub questions: usize,
    pub topics: usize,
    pub min_arity: usize,
    pub max_arity: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            students: 6,
            questions: 15,
            topics: 6,
            min_arity: 1,
            max_arity: 4,
        }
    }
}

/// Required spread in per-student scores (max minus min), in percent.
pub const MIN_STUDENT_SCORE_SPREAD_PERCENT: u64 = 30;
/// Some hyperedge must be at or below this achievement.
pub const LOW_EDGE_ACHIEVEMENT_PERCENT: u64 = 25;
/// Some hyperedge must be at or above this achievement.
pub const HIGH_EDGE_ACHIEVEMENT_PERCENT: u64 = 75;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

impl GeneratorConfig {
    pub fn check_feasible(&self) -> Result<(), GenerateError> {
        let fail = |m: String| Err(GenerateError::Infeasible(m));
        if self.students < 2 {
            return fail(format!(
                "need at least 2 students for a spread of scores, got {}",
                self.students
            ));
        }
        if self.min_arity == 0 || self.min_arity > self.max_arity {
            return fail(format!(
                "arity range {}..={} is empty or starts at 0",
                self.min_arity, self.max_arity
            ));
        }
        if self.topics < self.max_arity {
            return fail(format!(
                "{} topic(s) cannot form a question with {} topics",
                self.topics, self.max_arity
            ));
        }
        let span = self.max_arity - self.min_arity + 1;
        let needed = span.max(2);
        if self.questions < needed {
            return fail(format!(
                "need at least {needed} questions to span arities {}..={} with a 0% and a 100% question, got {}",
                self.min_arity, self.max_arity, self.questions
            ));
        }
        if span == 1 && binomial(self.topics, self.min_arity) < 2 {
            return fail(format!(
                "only one distinct {}-topic set exists among {} topics; achievements cannot differ by group",
                self.min_arity, self.topics
            ));
        }
        Ok(())
    }
}

/// Observed ranges, recomputed from the generated records.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintReport {
    pub arity_range: (usize, usize),
    pub student_score_range: (String, String),
    pub attempts_per_question: (u64, u64),
    pub question_average_range: (String, String),
    pub edge_achievement_range: (String, String),
    pub non_empty_levels: usize,
    pub violations: Vec<String>,
}

impl ConstraintReport {
    pub fn is_satisfied(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "question arities: {}..{}",
            self.arity_range.0, self.arity_range.1
        );
        let _ = writeln!(
            out,
            "student scores: {} .. {}",
            self.student_score_range.0, self.student_score_range.1
        );
        let _ = writeln!(
            out,
            "attempts per question: {} .. {}",
            self.attempts_per_question.0, self.attempts_per_question.1
        );
        let _ = writeln!(
            out,
            "question averages: {} .. {}",
            self.question_average_range.0, self.question_average_range.1
        );
        let _ = writeln!(
            out,
            "hyperedge achievements: {} .. {}",
            self.edge_achievement_range.0, self.edge_achievement_range.1
        );
        let _ = writeln!(out, "non-empty levels: {}", self.non_empty_levels);
        out
    }
}

fn min_max<T: Copy, F: Fn(&T, &T) -> std::cmp::Ordering>(items: &[T], cmp: F) -> Option<(T, T)> {
    let first = *items.first()?;
    Some(items.iter().fold((first, first), |(lo, hi), x| {
        (
            if cmp(x, &lo).is_lt() { *x } else { lo },
            if cmp(x, &hi).is_gt() { *x } else { hi },
        )
    }))
}

fn pct(a: Achievement) -> String {
    format!("{}%", a.percent())
}

/// Recomputes every constraint from raw records.
pub fn check_constraints(
    responses: &[ResponseRecord],
    tags: &[TagRecord],
    min_arity: usize,
    max_arity: usize,
) -> ConstraintReport {
    let mut violations = Vec::new();

    let arities: Vec<usize> = tags.iter().map(|t| t.topics.len()).collect();
    let arity_range = min_max(&arities, usize::cmp).unwrap_or((0, 0));
    if arity_range != (min_arity, max_arity) {
        violations.push(format!(
            "question arities span {}..{}, wanted {min_arity}..{max_arity}",
            arity_range.0, arity_range.1
        ));
    }

    let mut per_student: BTreeMap<&str, (u64, u64)> = BTreeMap::new();
    let mut per_question: BTreeMap<&str, (u64, u64)> = tags
        .iter()
        .map(|t| (t.question_id.as_str(), (0, 0)))
        .collect();
    for r in responses {
        let s = per_student.entry(&r.student_id).or_default();
        s.0 += u64::from(r.correct);
        s.1 += 1;
        let q = per_question.entry(&r.question_id).or_default();
        q.0 += u64::from(r.correct);
        q.1 += 1;
    }
    let ratio = |(c, n): (u64, u64)| Achievement::new(c, n).ok();

    let student_scores: Vec<Achievement> = per_student.values().filter_map(|&v| ratio(v)).collect();
    let student_range = min_max(&student_scores, Achievement::value_cmp);
    match student_range {
        Some((lo, hi)) => {
            // hi - lo >= spread  <=>  hi.n*lo.d - lo.n*hi.d >= spread * hi.d*lo.d
            let lhs = i128::from(hi.numerator()) * i128::from(lo.denominator())
                - i128::from(lo.numerator()) * i128::from(hi.denominator());
            let rhs = i128::from(hi.denominator()) * i128::from(lo.denominator());
            if lhs * 100 < rhs * i128::from(MIN_STUDENT_SCORE_SPREAD_PERCENT) {
                violations.push(format!(
                    "student scores span {}..{}, need a spread of at least {MIN_STUDENT_SCORE_SPREAD_PERCENT}%",
                    pct(lo),
                    pct(hi)
                ));
            }
        }
        None => violations.push("no student responses".into()),
    }

    let attempts: Vec<u64> = per_question.values().map(|v| v.1).collect();
    let attempts_range = min_max(&attempts, u64::cmp).unwrap_or((0, 0));
    if attempts_range.0 == attempts_range.1 {
        violations.push("every question has the same number of responses".into());
    }

    let averages: Vec<Achievement> = per_question.values().filter_map(|&v| ratio(v)).collect();
    let avg_range = min_max(&averages, Achievement::value_cmp);
    match avg_range {
        Some((lo, hi)) if lo.numerator() == 0 && hi.numerator() == hi.denominator() => {}
        _ => violations.push("question averages do not reach both 0% and 100%".into()),
    }

    let (edge_range, non_empty_levels) =
        match Dataset::from_records(responses.to_vec(), tags.to_vec()) {
            Ok(ds) => {
                let tdm = build_tdm(&ds.matrices, &ds.maps);
                let achv: Vec<Achievement> =
                    tdm.hyperedges().iter().map(|e| e.achievement()).collect();
                let levels: HashSet<usize> = tdm.hyperedges().iter().map(|e| e.arity()).collect();
                (min_max(&achv, Achievement::value_cmp), levels.len())
            }
            Err(e) => {
                violations.push(format!("records do not form a valid data set: {e}"));
                (None, 0)
            }
        };
    match edge_range {
        Some((lo, hi))
            if lo.numerator() * 100 <= LOW_EDGE_ACHIEVEMENT_PERCENT * lo.denominator()
                && hi.numerator() * 100 >= HIGH_EDGE_ACHIEVEMENT_PERCENT * hi.denominator() => {}
        _ => violations.push(format!(
            "hyperedge achievements must reach <= {LOW_EDGE_ACHIEVEMENT_PERCENT}% and >= {HIGH_EDGE_ACHIEVEMENT_PERCENT}%"
        )),
    }
    if non_empty_levels < 2 {
        violations.push("fewer than two non-empty levels".into());
    }

    let fmt_range = |r: Option<(Achievement, Achievement)>| {
        r.map(|(a, b)| (pct(a), pct(b)))
            .unwrap_or_else(|| ("-".into(), "-".into()))
    };
    ConstraintReport {
        arity_range,
        student_score_range: fmt_range(student_range),
        attempts_per_question: attempts_range,
        question_average_range: fmt_range(avg_range),
        edge_achievement_range: fmt_range(edge_range),
        non_empty_levels,
        violations,
    }
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub responses: Vec<ResponseRecord>,
    pub tags: Vec<TagRecord>,
    pub report: ConstraintReport,
}

fn labels(prefix: char, n: usize) -> Vec<String> {
    let width = n.to_string().len();
    (1..=n).map(|i| format!("{prefix}{i:0width$}")).collect()
}

pub fn generate(config: &GeneratorConfig) -> Result<Generated, GenerateError> {
    config.check_feasible()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let students = labels('S', config.students);
    let questions = labels('Q', config.questions);
    let topics = labels('T', config.topics);

    let pick = |rng: &mut ChaCha8Rng, arity: usize| -> BTreeSet<usize> {
        sample(rng, config.topics, arity).into_iter().collect()
    };

    // Question 0 is answered wrongly by everyone, question 1 correctly by
    // everyone who attempts it; their tag sets are kept for them alone.
    let span: Vec<usize> = (config.min_arity..=config.max_arity).collect();
    let mut sets: Vec<BTreeSet<usize>> = Vec::with_capacity(config.questions);
    for i in 0..config.questions {
        let reserved: Vec<&BTreeSet<usize>> = sets.iter().take(2.min(i)).collect();
        let arity = if i < span.len() {
            span[i]
        } else if i == 1 {
            span[0]
        } else {
            // Only arities that still have unreserved subsets.
            let open: Vec<usize> = span
                .iter()
                .copied()
                .filter(|&a| {
                    binomial(config.topics, a)
                        > reserved.iter().filter(|s| s.len() == a).count() as u128
                })
                .collect();
            if open.is_empty() {
                span[rng.gen_range(0..span.len())]
            } else {
                open[rng.gen_range(0..open.len())]
            }
        };
        let mut set = pick(&mut rng, arity);
        for _ in 0..256 {
            if !reserved.contains(&&set) {
                break;
            }
            set = pick(&mut rng, arity);
        }
        sets.push(set);
    }

    let last = config.students - 1;
    let mut responses = Vec::new();
    for (u, student) in students.iter().enumerate() {
        let ability = 0.15 + 0.7 * u as f64 / last as f64;
        for (i, question) in questions.iter().enumerate() {
            let (attempted, correct) = match i {
                0 => (true, false),
                1 => (u != 0, true),
                _ => {
                    let attempted = rng.gen_bool(0.8);
                    let roll = rng.gen_bool(ability);
                    let correct = if u == 0 {
                        false
                    } else if u == last {
                        true
                    } else {
                        roll
                    };
                    (attempted, correct)
                }
            };
            if attempted {
                responses.push(ResponseRecord::new(
                    student.as_str(),
                    question.as_str(),
                    correct,
                ));
            }
        }
    }
    let tags: Vec<TagRecord> = questions
        .iter()
        .zip(&sets)
        .map(|(q, s)| TagRecord::new(q.as_str(), s.iter().map(|&j| topics[j].as_str())))
        .collect();

    let report = check_constraints(&responses, &tags, config.min_arity, config.max_arity);
    if !report.is_satisfied() {
        return Err(GenerateError::Unsatisfied(report.violations));
    }
    Ok(Generated {
        responses,
        tags,
        report,
    })
}
