//! Arity levels, per-level filtering and view composition.
//!
//! `Level_k` holds the hyperedges joining exactly `k` topics. A filter never
//! removes an edge: edges that fail a predicate are greyed. Views show either
//! one level (accumulative) or levels `1..=k` together (cumulative); in both
//! cases statuses are computed level by level.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::{Achievement, Hyperedge, Tdm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FilterError {
    #[error("unknown query parameter `{0}`")]
    UnknownKey(String),
    #[error("query parameter `{0}` given more than once")]
    DuplicateKey(String),
    #[error("invalid value `{value}` for `{key}`: {reason}")]
    InvalidValue {
        key: String,
        value: String,
        reason: String,
    },
    #[error("`{lower}` is greater than `{upper}`")]
    InvertedBounds {
        lower: &'static str,
        upper: &'static str,
    },
    #[error("`{0}` cannot be combined with explicit bounds")]
    ExtremumWithBounds(&'static str),
    #[error("`mode` requires `level`")]
    ModeWithoutLevel,
    #[error("level {level} out of range 1..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("unknown topic `{0}`")]
    UnknownTopic(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TopicMatch {
    /// Edge shares at least one topic with the filter.
    #[default]
    Any,
    /// Edge contains every filter topic.
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopicFilter {
    pub labels: BTreeSet<String>,
    pub mode: TopicMatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Extremum {
    #[serde(rename = "level-min")]
    LevelMin,
    #[serde(rename = "level-max")]
    LevelMax,
}

/// Exact decimal in `[0, 1]` used as an achievement bound. Equality is by value.
#[derive(Debug, Clone, Copy)]
pub struct Threshold {
    num: u64,
    den: u64,
}

const MAX_THRESHOLD_DIGITS: usize = 9;

impl Threshold {
    /// `percent / 100`, so the threshold written "<= 60" is `Threshold::percent(60)`.
    pub fn percent(percent: u64) -> Self {
        assert!(percent <= 100, "percent threshold {percent} above 100");
        Self {
            num: percent,
            den: 100,
        }
    }

    fn cmp_achievement(&self, a: &Achievement) -> Ordering {
        (u128::from(self.num) * u128::from(a.denominator()))
            .cmp(&(u128::from(a.numerator()) * u128::from(self.den)))
    }

    fn value_cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.num) * u128::from(other.den))
            .cmp(&(u128::from(other.num) * u128::from(self.den)))
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialEq for Threshold {
    fn eq(&self, other: &Self) -> bool {
        self.value_cmp(other) == Ordering::Equal
    }
}

impl Eq for Threshold {}

impl FromStr for Threshold {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        let digits_ok = |d: &str| d.bytes().all(|b| b.is_ascii_digit());
        if int.is_empty()
            || !digits_ok(int)
            || !digits_ok(frac)
            || (s.contains('.') && frac.is_empty())
        {
            return Err("expected a decimal number in [0, 1]".into());
        }
        let frac = frac.trim_end_matches('0');
        if frac.len() > MAX_THRESHOLD_DIGITS {
            return Err(format!("at most {MAX_THRESHOLD_DIGITS} decimal places"));
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = int.parse().map_err(|_| "number too large".to_string())?;
        let frac_v: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().unwrap()
        };
        let num = int
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_v))
            .ok_or("number too large")?;
        if num > den {
            return Err("achievement bounds lie in [0, 1]".into());
        }
        Ok(Self { num, den })
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places = self.den.trailing_zeros_base10();
        if places == 0 {
            return write!(f, "{}", self.num);
        }
        write!(
            f,
            "{}.{:0width$}",
            self.num / self.den,
            self.num % self.den,
            width = places as usize
        )
    }
}

trait TrailingZerosBase10 {
    fn trailing_zeros_base10(self) -> u32;
}

impl TrailingZerosBase10 for u64 {
    fn trailing_zeros_base10(mut self) -> u32 {
        let mut n = 0;
        while self >= 10 && self.is_multiple_of(10) {
            self /= 10;
            n += 1;
        }
        n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AchievementFilter {
    /// Inclusive bounds.
    Range {
        min: Option<Threshold>,
        max: Option<Threshold>,
    },
    Extremum(Extremum),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverageFilter {
    /// Inclusive bounds.
    Range {
        min: Option<u64>,
        max: Option<u64>,
    },
    Extremum(Extremum),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ViewMode {
    /// Levels `1..=k` together.
    #[default]
    Cumulative,
    /// Level `k` alone.
    Accumulative,
}

impl FromStr for ViewMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cumulative" => Ok(Self::Cumulative),
            "accumulative" => Ok(Self::Accumulative),
            _ => Err("expected `cumulative` or `accumulative`".into()),
        }
    }
}

impl fmt::Display for ViewMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Cumulative => "cumulative",
            Self::Accumulative => "accumulative",
        })
    }
}

impl FromStr for TopicMatch {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "any" => Ok(Self::Any),
            "all" => Ok(Self::All),
            _ => Err("expected `any` or `all`".into()),
        }
    }
}

impl fmt::Display for TopicMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Any => "any",
            Self::All => "all",
        })
    }
}

impl FromStr for Extremum {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "level-min" => Ok(Self::LevelMin),
            "level-max" => Ok(Self::LevelMax),
            _ => Err("expected `level-min` or `level-max`".into()),
        }
    }
}

impl fmt::Display for Extremum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::LevelMin => "level-min",
            Self::LevelMax => "level-max",
        })
    }
}

/// Topic, achievement and coverage predicates plus the level/mode selection.
///
/// `level: None` means "the highest level", i.e. the whole graph in cumulative mode.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FilterSpec {
    pub topics: Option<TopicFilter>,
    pub achievement: Option<AchievementFilter>,
    pub coverage: Option<CoverageFilter>,
    pub mode: ViewMode,
    pub level: Option<usize>,
}

/// Query keys, in canonical serialization order.
pub const FILTER_KEYS: [&str; 10] = [
    "topics",
    "topic_mode",
    "achv_min",
    "achv_max",
    "achv_extremum",
    "cov_min",
    "cov_max",
    "cov_extremum",
    "level",
    "mode",
];

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, FilterError>
where
    T::Err: fmt::Display,
{
    value.parse::<T>().map_err(|e| FilterError::InvalidValue {
        key: key.to_string(),
        value: value.to_string(),
        reason: e.to_string(),
    })
}

impl FilterSpec {
    pub fn with_topics<I, S>(mut self, labels: I, mode: TopicMatch) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.topics = Some(TopicFilter {
            labels: labels.into_iter().map(Into::into).collect(),
            mode,
        });
        self
    }

    pub fn with_achievement(mut self, filter: AchievementFilter) -> Self {
        self.achievement = Some(filter);
        self
    }

    pub fn with_coverage(mut self, filter: CoverageFilter) -> Self {
        self.coverage = Some(filter);
        self
    }

    pub fn at_level(mut self, level: usize, mode: ViewMode) -> Self {
        self.level = Some(level);
        self.mode = mode;
        self
    }

    pub fn is_unfiltered(&self) -> bool {
        self.topics.is_none() && self.achievement.is_none() && self.coverage.is_none()
    }

    /// Builds a spec from decoded `key=value` pairs using the [`FILTER_KEYS`] names.
    pub fn from_pairs<I, K, V>(pairs: I) -> Result<Self, FilterError>
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: AsRef<str>,
    {
        let mut values: [Option<String>; FILTER_KEYS.len()] = Default::default();
        for (k, v) in pairs {
            let key = k.as_ref();
            let slot = FILTER_KEYS
                .iter()
                .position(|&name| name == key)
                .ok_or_else(|| FilterError::UnknownKey(key.to_string()))?;
            if values[slot].is_some() {
                return Err(FilterError::DuplicateKey(key.to_string()));
            }
            values[slot] = Some(v.as_ref().trim().to_string());
        }
        let get = |key: &str| {
            let slot = FILTER_KEYS.iter().position(|&n| n == key).unwrap();
            values[slot].as_deref()
        };

        let mut spec = FilterSpec::default();

        let topic_mode = match get("topic_mode") {
            Some(v) => parse_value::<TopicMatch>("topic_mode", v)?,
            None => TopicMatch::default(),
        };
        if let Some(v) = get("topics") {
            let labels: BTreeSet<String> = v
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            if labels.is_empty() {
                return Err(FilterError::InvalidValue {
                    key: "topics".into(),
                    value: v.into(),
                    reason: "expected one or more comma-separated topic labels".into(),
                });
            }
            spec.topics = Some(TopicFilter {
                labels,
                mode: topic_mode,
            });
        }

        let achv_min = get("achv_min")
            .map(|v| parse_value::<Threshold>("achv_min", v))
            .transpose()?;
        let achv_max = get("achv_max")
            .map(|v| parse_value::<Threshold>("achv_max", v))
            .transpose()?;
        let achv_ext = get("achv_extremum")
            .map(|v| parse_value::<Extremum>("achv_extremum", v))
            .transpose()?;
        spec.achievement = match (achv_min, achv_max, achv_ext) {
            (None, None, None) => None,
            (None, None, Some(e)) => Some(AchievementFilter::Extremum(e)),
            (_, _, Some(_)) => return Err(FilterError::ExtremumWithBounds("achv_extremum")),
            (min, max, None) => {
                if let (Some(lo), Some(hi)) = (min, max) {
                    if lo.value_cmp(&hi) == Ordering::Greater {
                        return Err(FilterError::InvertedBounds {
                            lower: "achv_min",
                            upper: "achv_max",
                        });
                    }
                }
                Some(AchievementFilter::Range { min, max })
            }
        };

        let cov_min = get("cov_min")
            .map(|v| parse_value::<u64>("cov_min", v))
            .transpose()?;
        let cov_max = get("cov_max")
            .map(|v| parse_value::<u64>("cov_max", v))
            .transpose()?;
        let cov_ext = get("cov_extremum")
            .map(|v| parse_value::<Extremum>("cov_extremum", v))
            .transpose()?;
        spec.coverage = match (cov_min, cov_max, cov_ext) {
            (None, None, None) => None,
            (None, None, Some(e)) => Some(CoverageFilter::Extremum(e)),
            (_, _, Some(_)) => return Err(FilterError::ExtremumWithBounds("cov_extremum")),
            (min, max, None) => {
                if matches!((min, max), (Some(lo), Some(hi)) if lo > hi) {
                    return Err(FilterError::InvertedBounds {
                        lower: "cov_min",
                        upper: "cov_max",
                    });
                }
                Some(CoverageFilter::Range { min, max })
            }
        };

        if let Some(v) = get("level") {
            let level: usize = parse_value("level", v)?;
            if level == 0 {
                return Err(FilterError::InvalidValue {
                    key: "level".into(),
                    value: v.into(),
                    reason: "levels start at 1".into(),
                });
            }
            spec.level = Some(level);
        }
        if let Some(v) = get("mode") {
            if spec.level.is_none() {
                return Err(FilterError::ModeWithoutLevel);
            }
            spec.mode = parse_value("mode", v)?;
        }
        Ok(spec)
    }

    /// Parses a URL query string (without the leading `?`).
    pub fn from_query(query: &str) -> Result<Self, FilterError> {
        Self::from_pairs(form_urlencoded::parse(query.as_bytes()))
    }

    /// Canonical `key=value` pairs; `from_pairs(to_pairs())` is the identity.
    pub fn to_pairs(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        if let Some(t) = &self.topics {
            let labels: Vec<&str> = t.labels.iter().map(String::as_str).collect();
            out.push(("topics", labels.join(",")));
            out.push(("topic_mode", t.mode.to_string()));
        }
        match self.achievement {
            Some(AchievementFilter::Range { min, max }) => {
                if let Some(v) = min {
                    out.push(("achv_min", v.to_string()));
                }
                if let Some(v) = max {
                    out.push(("achv_max", v.to_string()));
                }
            }
            Some(AchievementFilter::Extremum(e)) => out.push(("achv_extremum", e.to_string())),
            None => {}
        }
        match self.coverage {
            Some(CoverageFilter::Range { min, max }) => {
                if let Some(v) = min {
                    out.push(("cov_min", v.to_string()));
                }
                if let Some(v) = max {
                    out.push(("cov_max", v.to_string()));
                }
            }
            Some(CoverageFilter::Extremum(e)) => out.push(("cov_extremum", e.to_string())),
            None => {}
        }
        if let Some(level) = self.level {
            out.push(("level", level.to_string()));
            out.push(("mode", self.mode.to_string()));
        }
        out
    }

    pub fn to_query(&self) -> String {
        form_urlencoded::Serializer::new(String::new())
            .extend_pairs(self.to_pairs())
            .finish()
    }

    /// Checks the spec against a model: known topics and an in-range level.
    pub fn validate(&self, tdm: &Tdm) -> Result<(), FilterError> {
        if let Some(t) = &self.topics {
            if let Some(unknown) = t.labels.iter().find(|l| tdm.topic_index(l).is_none()) {
                return Err(FilterError::UnknownTopic(unknown.clone()));
            }
        }
        if let Some(level) = self.level {
            let max = tdm.vertex_count();
            if level > max {
                return Err(FilterError::LevelOutOfRange { level, max });
            }
        }
        Ok(())
    }

    /// The level the view is anchored at: the requested one or the highest.
    pub fn effective_level(&self, tdm: &Tdm) -> usize {
        self.level.unwrap_or(tdm.vertex_count())
    }

    fn passes_topics(&self, tdm: &Tdm, edge: &Hyperedge) -> bool {
        let Some(filter) = &self.topics else {
            return true;
        };
        let mut hits = filter
            .labels
            .iter()
            .map(|l| tdm.topic_index(l).is_some_and(|i| edge.topics.contains(i)));
        match filter.mode {
            TopicMatch::Any => hits.any(|h| h),
            TopicMatch::All => hits.all(|h| h),
        }
    }

    fn passes_bounds(&self, edge: &Hyperedge) -> bool {
        let achv_ok = match self.achievement {
            Some(AchievementFilter::Range { min, max }) => {
                let a = edge.achievement();
                min.is_none_or(|lo| lo.cmp_achievement(&a) != Ordering::Greater)
                    && max.is_none_or(|hi| hi.cmp_achievement(&a) != Ordering::Less)
            }
            _ => true,
        };
        let cov_ok = match self.coverage {
            Some(CoverageFilter::Range { min, max }) => {
                min.is_none_or(|lo| edge.coverage >= lo) && max.is_none_or(|hi| edge.coverage <= hi)
            }
            _ => true,
        };
        achv_ok && cov_ok
    }
}

impl fmt::Display for FilterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_query())
    }
}

/// Edge positions grouped by arity; `levels[k - 1]` is `Level_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelPartition {
    levels: Vec<Vec<usize>>,
}

impl LevelPartition {
    /// Number of levels, which equals the vertex count.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Edges of `Level_k` (1-based).
    pub fn level(&self, k: usize) -> &[usize] {
        &self.levels[k - 1]
    }

    /// `(k, edges)` for every level, empty ones included.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &[usize])> {
        self.levels
            .iter()
            .enumerate()
            .map(|(i, l)| (i + 1, l.as_slice()))
    }

    pub fn flatten(&self) -> Vec<usize> {
        self.levels.iter().flatten().copied().collect()
    }
}

pub fn partition_levels(tdm: &Tdm) -> LevelPartition {
    let mut levels = vec![Vec::new(); tdm.vertex_count()];
    for (pos, edge) in tdm.hyperedges().iter().enumerate() {
        levels[edge.arity() - 1].push(pos);
    }
    LevelPartition { levels }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeStatus {
    Selected,
    Greyed,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LevelFilter {
    pub selected: Vec<usize>,
    pub greyed: Vec<usize>,
}

fn extremal<T, F, C>(candidates: &[usize], key: F, cmp: C, which: Extremum) -> BTreeSet<usize>
where
    F: Fn(usize) -> T,
    C: Fn(&T, &T) -> Ordering,
{
    let mut best: Option<T> = None;
    for &e in candidates {
        let k = key(e);
        let better = match &best {
            None => true,
            Some(b) => match which {
                Extremum::LevelMax => cmp(&k, b) == Ordering::Greater,
                Extremum::LevelMin => cmp(&k, b) == Ordering::Less,
            },
        };
        if better {
            best = Some(k);
        }
    }
    let Some(best) = best else {
        return BTreeSet::new();
    };
    candidates
        .iter()
        .copied()
        .filter(|&e| cmp(&key(e), &best) == Ordering::Equal)
        .collect()
}

/// Splits one level's edges into selected and greyed.
///
/// An edge is selected when it passes every predicate in `spec`. Extremum
/// selectors pick, among the edges passing the topic and bound predicates,
/// those with the lowest or highest value in this level; ties are all kept.
pub fn filter_level(tdm: &Tdm, level: &[usize], spec: &FilterSpec) -> LevelFilter {
    let edges = tdm.hyperedges();
    let candidates: Vec<usize> = level
        .iter()
        .copied()
        .filter(|&e| spec.passes_topics(tdm, &edges[e]) && spec.passes_bounds(&edges[e]))
        .collect();
    let achv_pick = match spec.achievement {
        Some(AchievementFilter::Extremum(which)) => Some(extremal(
            &candidates,
            |e| edges[e].achievement(),
            Achievement::value_cmp,
            which,
        )),
        _ => None,
    };
    let cov_pick = match spec.coverage {
        Some(CoverageFilter::Extremum(which)) => Some(extremal(
            &candidates,
            |e| edges[e].coverage,
            u64::cmp,
            which,
        )),
        _ => None,
    };
    let chosen: BTreeSet<usize> = candidates
        .into_iter()
        .filter(|e| achv_pick.as_ref().is_none_or(|p| p.contains(e)))
        .filter(|e| cov_pick.as_ref().is_none_or(|p| p.contains(e)))
        .collect();
    let (selected, greyed) = level.iter().partition(|e| chosen.contains(e));
    LevelFilter { selected, greyed }
}

/// Min/max of the two weights over the visible edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LegendRanges {
    pub coverage_min: u64,
    pub coverage_max: u64,
    pub achievement_min: Achievement,
    pub achievement_max: Achievement,
}

/// A level-filtered, mode-composed selection ready for rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewModel {
    pub spec: FilterSpec,
    /// The level the view is anchored at (0 only for a model without topics).
    pub level: usize,
    pub active_levels: Vec<usize>,
    /// Visible edges in canonical order with their status.
    pub statuses: Vec<(usize, EdgeStatus)>,
    pub legend: Option<LegendRanges>,
}

impl ViewModel {
    pub fn status_of(&self, edge: usize) -> Option<EdgeStatus> {
        self.statuses
            .binary_search_by_key(&edge, |&(e, _)| e)
            .ok()
            .map(|i| self.statuses[i].1)
    }

    pub fn visible(&self) -> impl Iterator<Item = usize> + '_ {
        self.statuses.iter().map(|&(e, _)| e)
    }

    pub fn with_status(&self, status: EdgeStatus) -> Vec<usize> {
        self.statuses
            .iter()
            .filter(|&&(_, s)| s == status)
            .map(|&(e, _)| e)
            .collect()
    }

    pub fn selected(&self) -> Vec<usize> {
        self.with_status(EdgeStatus::Selected)
    }

    pub fn greyed(&self) -> Vec<usize> {
        self.with_status(EdgeStatus::Greyed)
    }
}

fn legend_ranges(tdm: &Tdm, visible: &[usize]) -> Option<LegendRanges> {
    let edges = tdm.hyperedges();
    let first = edges[*visible.first()?].achievement();
    let mut ranges = LegendRanges {
        coverage_min: u64::MAX,
        coverage_max: 0,
        achievement_min: first,
        achievement_max: first,
    };
    for &e in visible {
        let edge = &edges[e];
        ranges.coverage_min = ranges.coverage_min.min(edge.coverage);
        ranges.coverage_max = ranges.coverage_max.max(edge.coverage);
        let a = edge.achievement();
        if a.value_cmp(&ranges.achievement_min) == Ordering::Less {
            ranges.achievement_min = a;
        }
        if a.value_cmp(&ranges.achievement_max) == Ordering::Greater {
            ranges.achievement_max = a;
        }
    }
    Some(ranges)
}

pub fn compose_view(
    tdm: &Tdm,
    partition: &LevelPartition,
    spec: &FilterSpec,
) -> Result<ViewModel, FilterError> {
    spec.validate(tdm)?;
    let level = spec.effective_level(tdm);
    let active_levels: Vec<usize> = match (level, spec.mode) {
        (0, _) => Vec::new(),
        (k, ViewMode::Accumulative) => vec![k],
        (k, ViewMode::Cumulative) => (1..=k).collect(),
    };
    let mut statuses = Vec::new();
    for &k in &active_levels {
        let f = filter_level(tdm, partition.level(k), spec);
        statuses.extend(f.selected.into_iter().map(|e| (e, EdgeStatus::Selected)));
        statuses.extend(f.greyed.into_iter().map(|e| (e, EdgeStatus::Greyed)));
    }
    statuses.sort_unstable_by_key(|&(e, _)| e);
    let visible: Vec<usize> = statuses.iter().map(|&(e, _)| e).collect();
    let legend = legend_ranges(tdm, &visible);
    Ok(ViewModel {
        spec: spec.clone(),
        level,
        active_levels,
        statuses,
        legend,
    })
}
