//! Two-weighted topic hypergraph.
//!
//! Vertices are topics. Every distinct exact tag set that received at least one
//! attempted response becomes a hyperedge weighted by its coverage (number of
//! attempted responses) and its achievement (fraction of those answered
//! correctly). A question feeds only the edge whose topic set equals its tag
//! set, so the attempted responses are partitioned across edges.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ingest::{IndexMaps, WorkingMatrices};
use crate::matrix::BinaryMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("topic set must not be empty")]
    EmptyTopicSet,
    #[error("achievement is undefined for a topic set with zero coverage")]
    UndefinedAchievement,
}

/// Non-empty, sorted, duplicate-free set of topic indices.
///
/// Ordered by arity first, then lexicographically. Topic indices follow the
/// byte order of their labels, so this is also the label order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TopicSet(Vec<usize>);

impl TopicSet {
    pub fn new<I: IntoIterator<Item = usize>>(topics: I) -> Result<Self, HypergraphError> {
        let mut v: Vec<usize> = topics.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(HypergraphError::EmptyTopicSet);
        }
        Ok(Self(v))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, topic: usize) -> bool {
        self.0.binary_search(&topic).is_ok()
    }

    pub fn is_self_loop(&self) -> bool {
        self.0.len() == 1
    }
}

impl Ord for TopicSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for TopicSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact fraction `correct / attempts`, kept unreduced so the denominator is the coverage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Achievement {
    correct: u64,
    attempts: u64,
}

impl Achievement {
    pub fn new(correct: u64, attempts: u64) -> Result<Self, HypergraphError> {
        if attempts == 0 {
            return Err(HypergraphError::UndefinedAchievement);
        }
        assert!(
            correct <= attempts,
            "correct count {correct} exceeds attempts {attempts}"
        );
        Ok(Self { correct, attempts })
    }

    pub fn numerator(&self) -> u64 {
        self.correct
    }

    pub fn denominator(&self) -> u64 {
        self.attempts
    }

    pub fn to_f64(&self) -> f64 {
        self.correct as f64 / self.attempts as f64
    }

    /// Compares by rational value.
    pub fn value_cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.correct) * u128::from(other.attempts))
            .cmp(&(u128::from(other.correct) * u128::from(self.attempts)))
    }

    /// Value scaled by `10^places`, rounded half-up.
    fn scaled_half_up(&self, places: u32) -> u128 {
        let scale = 10u128.pow(places);
        let (n, d) = (u128::from(self.correct), u128::from(self.attempts));
        (2 * n * scale + d) / (2 * d)
    }

    /// Two-decimal rendering, rounded half-up, e.g. `7/13` -> `"0.54"`.
    pub fn display_2dp(&self) -> String {
        let v = self.scaled_half_up(2);
        format!("{}.{:02}", v / 100, v % 100)
    }

    /// Whole percent, rounded half-up.
    pub fn percent(&self) -> u64 {
        self.scaled_half_up(2) as u64
    }
}

impl fmt::Display for Achievement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.correct, self.attempts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopicVertex {
    pub index: usize,
    pub label: String,
}

/// Per-question share of an edge's weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contributor {
    pub question_id: String,
    pub attempts: u64,
    pub correct: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperedge {
    pub topics: TopicSet,
    pub coverage: u64,
    pub correct: u64,
    pub contributors: Vec<Contributor>,
}

impl Hyperedge {
    pub fn arity(&self) -> usize {
        self.topics.arity()
    }

    pub fn achievement(&self) -> Achievement {
        Achievement::new(self.correct, self.coverage).expect("hyperedges always have coverage >= 1")
    }
}

/// The topic dependency hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tdm {
    pub(crate) vertices: Vec<TopicVertex>,
    pub(crate) hyperedges: Vec<Hyperedge>,
    pub(crate) diagnostics: Vec<TopicSet>,
}

impl Tdm {
    pub fn vertices(&self) -> &[TopicVertex] {
        &self.vertices
    }

    /// Hyperedges in canonical order.
    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    /// Tag sets present in the data that received no attempts.
    pub fn zero_coverage_sets(&self) -> &[TopicSet] {
        &self.diagnostics
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.hyperedges.len()
    }

    /// Canonical edge identifier: `h1`, `h2`, ... in canonical order.
    pub fn edge_id(position: usize) -> String {
        format!("h{}", position + 1)
    }

    /// Inverse of [`Tdm::edge_id`].
    pub fn edge_position(&self, id: &str) -> Option<usize> {
        let n: usize = id.strip_prefix('h')?.parse().ok()?;
        (n >= 1 && n <= self.hyperedges.len()).then(|| n - 1)
    }

    pub fn topic_index(&self, label: &str) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.label.as_str().cmp(label))
            .ok()
    }

    pub fn topic_label(&self, index: usize) -> &str {
        &self.vertices[index].label
    }

    pub fn labels(&self, set: &TopicSet) -> Vec<&str> {
        set.indices().iter().map(|&i| self.topic_label(i)).collect()
    }

    /// Position of the edge whose topic set is exactly `labels`.
    pub fn find_edge<S: AsRef<str>>(&self, labels: &[S]) -> Option<usize> {
        let indices: Option<Vec<usize>> = labels
            .iter()
            .map(|l| self.topic_index(l.as_ref()))
            .collect();
        let set = TopicSet::new(indices?).ok()?;
        self.hyperedges
            .binary_search_by(|e| e.topics.cmp(&set))
            .ok()
    }

    pub fn total_coverage(&self) -> u64 {
        self.hyperedges.iter().map(|e| e.coverage).sum()
    }

    pub fn max_arity(&self) -> usize {
        self.hyperedges
            .iter()
            .map(Hyperedge::arity)
            .max()
            .unwrap_or(0)
    }
}

fn question_tag_set(question: usize, tags: &BinaryMatrix) -> Option<TopicSet> {
    TopicSet::new(tags.row_ones(question)).ok()
}

/// True iff `question` is tagged with exactly the topics in `set`.
pub fn exact_tag_match(question: usize, set: &TopicSet, tags: &BinaryMatrix) -> bool {
    tags.row_ones(question).eq(set.indices().iter().copied())
}

fn matching_questions<'a>(
    set: &'a TopicSet,
    tags: &'a BinaryMatrix,
) -> impl Iterator<Item = usize> + 'a {
    (0..tags.rows()).filter(move |&i| exact_tag_match(i, set, tags))
}

/// Number of attempted responses to questions tagged exactly with `set`.
pub fn compute_cov(set: &TopicSet, tags: &BinaryMatrix, attempted: &BinaryMatrix) -> u64 {
    matching_questions(set, tags)
        .map(|i| attempted.col_sum(i))
        .sum()
}

/// Fraction of those attempted responses answered correctly.
pub fn compute_achv(
    set: &TopicSet,
    tags: &BinaryMatrix,
    correct: &BinaryMatrix,
    attempted: &BinaryMatrix,
) -> Result<Achievement, HypergraphError> {
    let cov = compute_cov(set, tags, attempted);
    let right: u64 = matching_questions(set, tags)
        .map(|i| correct.col_sum(i))
        .sum();
    Achievement::new(right, cov)
}

pub fn build_tdm(matrices: &WorkingMatrices, maps: &IndexMaps) -> Tdm {
    let vertices = maps
        .topics
        .ids()
        .iter()
        .enumerate()
        .map(|(index, label)| TopicVertex {
            index,
            label: label.clone(),
        })
        .collect();

    let mut groups: BTreeMap<TopicSet, Vec<Contributor>> = BTreeMap::new();
    for question in 0..matrices.tags.rows() {
        let Some(set) = question_tag_set(question, &matrices.tags) else {
            continue;
        };
        groups.entry(set).or_default().push(Contributor {
            question_id: maps.questions.id(question).to_string(),
            attempts: matrices.attempted.col_sum(question),
            correct: matrices.correct.col_sum(question),
        });
    }

    let mut hyperedges = Vec::new();
    let mut diagnostics = Vec::new();
    for (topics, contributors) in groups {
        let coverage: u64 = contributors.iter().map(|c| c.attempts).sum();
        if coverage == 0 {
            diagnostics.push(topics);
            continue;
        }
        let correct = contributors.iter().map(|c| c.correct).sum();
        let contributors = contributors
            .into_iter()
            .filter(|c| c.attempts > 0)
            .collect();
        hyperedges.push(Hyperedge {
            topics,
            coverage,
            correct,
            contributors,
        });
    }

    Tdm {
        vertices,
        hyperedges,
        diagnostics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{Dataset, ResponseRecord, TagRecord};
    use crate::sample;

    fn set(ds: &Dataset, labels: &[&str]) -> TopicSet {
        TopicSet::new(labels.iter().map(|l| ds.maps.topics.index_of(l).unwrap())).unwrap()
    }

    fn q(ds: &Dataset, id: &str) -> usize {
        ds.maps.questions.index_of(id).unwrap()
    }

    #[test]
    fn exact_match_rejects_supersets_and_subsets() {
        let ds = sample::sample_dataset();
        let t = &ds.matrices.tags;
        assert!(exact_tag_match(
            q(&ds, "Q9"),
            &set(&ds, &["T1", "T4", "T5"]),
            t
        ));
        assert!(!exact_tag_match(q(&ds, "Q9"), &set(&ds, &["T1", "T4"]), t));
        assert!(!exact_tag_match(
            q(&ds, "Q5"),
            &set(&ds, &["T1", "T4", "T5"]),
            t
        ));
    }

    #[test]
    fn empty_topic_set_is_rejected() {
        assert_eq!(TopicSet::new([]), Err(HypergraphError::EmptyTopicSet));
    }

    #[test]
    fn coverage_examples() {
        let ds = sample::sample_dataset();
        let m = &ds.matrices;
        assert_eq!(
            compute_cov(&set(&ds, &["T1", "T4"]), &m.tags, &m.attempted),
            13
        );
        assert_eq!(compute_cov(&set(&ds, &["T3"]), &m.tags, &m.attempted), 6);
        assert_eq!(compute_cov(&set(&ds, &["T6"]), &m.tags, &m.attempted), 0);
    }

    #[test]
    fn achievement_examples() {
        let ds = sample::sample_dataset();
        let m = &ds.matrices;
        let achv =
            |labels: &[&str]| compute_achv(&set(&ds, labels), &m.tags, &m.correct, &m.attempted);
        let h5 = achv(&["T1", "T4"]).unwrap();
        assert_eq!((h5.numerator(), h5.denominator()), (7, 13));
        assert_eq!(h5.display_2dp(), "0.54");
        assert_eq!(achv(&["T2", "T6"]).unwrap().numerator(), 0);
        assert_eq!(
            achv(&["T1", "T2", "T6"]).unwrap(),
            Achievement::new(3, 3).unwrap()
        );
        assert_eq!(achv(&["T6"]), Err(HypergraphError::UndefinedAchievement));
    }

    #[test]
    fn half_up_rounding() {
        assert_eq!(Achievement::new(1, 8).unwrap().display_2dp(), "0.13");
        assert_eq!(Achievement::new(1, 200).unwrap().display_2dp(), "0.01");
        assert_eq!(Achievement::new(1, 3).unwrap().display_2dp(), "0.33");
        assert_eq!(Achievement::new(5, 5).unwrap().display_2dp(), "1.00");
        assert_eq!(Achievement::new(7, 13).unwrap().percent(), 54);
    }

    #[test]
    fn sample_edges() {
        let ds = sample::sample_dataset();
        let tdm = build_tdm(&ds.matrices, &ds.maps);
        assert_eq!(tdm.vertex_count(), 6);
        let sets: Vec<Vec<&str>> = tdm
            .hyperedges()
            .iter()
            .map(|e| tdm.labels(&e.topics))
            .collect();
        assert_eq!(
            sets,
            vec![
                vec!["T1"],
                vec!["T3"],
                vec!["T4"],
                vec!["T1", "T2"],
                vec!["T1", "T4"],
                vec!["T2", "T6"],
                vec!["T4", "T5"],
                vec!["T1", "T2", "T6"],
                vec!["T1", "T4", "T5"],
                vec!["T1", "T2", "T4", "T5"],
                vec!["T2", "T4", "T5", "T6"],
            ]
        );
        let h10 = &tdm.hyperedges()[tdm.find_edge(&["T1", "T2", "T4", "T5"]).unwrap()];
        assert_eq!(h10.coverage, 11);
        assert_eq!(h10.achievement(), Achievement::new(4, 11).unwrap());
        let h5 = &tdm.hyperedges()[4];
        let parts: Vec<(&str, u64)> = h5
            .contributors
            .iter()
            .map(|c| (c.question_id.as_str(), c.attempts))
            .collect();
        assert_eq!(parts, vec![("Q11", 4), ("Q5", 4), ("Q7", 5)]);
        assert!(tdm.zero_coverage_sets().is_empty());
    }

    #[test]
    fn single_self_loop() {
        let ds = Dataset::from_records(
            vec![ResponseRecord::new("S1", "Q1", true)],
            vec![TagRecord::new("Q1", ["T1"])],
        )
        .unwrap();
        let tdm = build_tdm(&ds.matrices, &ds.maps);
        assert_eq!(tdm.edge_count(), 1);
        let e = &tdm.hyperedges()[0];
        assert!(e.topics.is_self_loop());
        assert_eq!((e.coverage, e.correct), (1, 1));
    }

    #[test]
    fn unattempted_sets_go_to_diagnostics() {
        let ds = Dataset::from_records(
            vec![ResponseRecord::new("S1", "Q1", false)],
            vec![
                TagRecord::new("Q1", ["A"]),
                TagRecord::new("Q2", ["A", "B"]),
            ],
        )
        .unwrap();
        let tdm = build_tdm(&ds.matrices, &ds.maps);
        assert_eq!(tdm.edge_count(), 1);
        assert_eq!(tdm.zero_coverage_sets().len(), 1);
        assert_eq!(tdm.labels(&tdm.zero_coverage_sets()[0]), vec!["A", "B"]);
    }

    #[test]
    fn edge_ids_round_trip() {
        let ds = sample::sample_dataset();
        let tdm = build_tdm(&ds.matrices, &ds.maps);
        assert_eq!(Tdm::edge_id(4), "h5");
        assert_eq!(tdm.edge_position("h5"), Some(4));
        assert_eq!(tdm.edge_position("h12"), None);
        assert_eq!(tdm.edge_position("h0"), None);
        assert_eq!(tdm.edge_position("x1"), None);
    }
}
