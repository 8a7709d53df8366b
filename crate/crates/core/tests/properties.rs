use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tdm_core::hypergraph::build_tdm;
use tdm_core::ingest::{write_qt, write_sqa, ResponseRecord, TagRecord};
use tdm_core::levels::{compose_view, EdgeStatus, ViewMode};
use tdm_core::render::style::coverage_width;
use tdm_core::render::{build_scene, layout_vertices, ramp_color, Rgb};
use tdm_core::{
    model_json, partition_levels, render_view, Dataset, FilterSpec, LayoutConfig, Tdm, ViewRequest,
};
use tdm_testkit::{
    engine_table, engine_zero_coverage, oracle_table, oracle_zero_coverage, random_filter_pairs,
    random_records, raw_from_records,
};

fn dataset(seed: u64) -> (Vec<ResponseRecord>, Vec<TagRecord>, Tdm) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (responses, tags) = random_records(&mut rng);
    let ds = Dataset::from_records(responses.clone(), tags.clone()).expect("random data is valid");
    let tdm = build_tdm(&ds.matrices, &ds.maps);
    (responses, tags, tdm)
}

fn topics(tdm: &Tdm) -> Vec<String> {
    tdm.vertices().iter().map(|v| v.label.clone()).collect()
}

fn spec_with(pairs: &[(String, String)], level: usize, mode: ViewMode) -> FilterSpec {
    let mut spec = FilterSpec::from_pairs(pairs.iter().cloned()).unwrap();
    spec.level = Some(level);
    spec.mode = mode;
    spec
}

fn selected_set(tdm: &Tdm, spec: &FilterSpec) -> BTreeSet<usize> {
    compose_view(tdm, &partition_levels(tdm), spec)
        .unwrap()
        .selected()
        .into_iter()
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn engine_matches_brute_force(seed in any::<u64>()) {
        let (responses, tags, tdm) = dataset(seed);
        let raw = raw_from_records(&responses, &tags);
        prop_assert_eq!(engine_table(&tdm), oracle_table(&raw));
        prop_assert_eq!(engine_zero_coverage(&tdm), oracle_zero_coverage(&raw));
    }

    #[test]
    fn coverage_is_conserved(seed in any::<u64>()) {
        let (responses, _, tdm) = dataset(seed);
        prop_assert_eq!(tdm.total_coverage(), responses.len() as u64);
        let by_level: u64 = partition_levels(&tdm)
            .iter()
            .flat_map(|(_, edges)| edges.iter().map(|&e| tdm.hyperedges()[e].coverage))
            .sum();
        prop_assert_eq!(by_level, responses.len() as u64);
    }

    #[test]
    fn row_order_does_not_matter(seed in any::<u64>(), shuffle in any::<u64>()) {
        let (mut responses, mut tags, tdm) = dataset(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(shuffle);
        responses.shuffle(&mut rng);
        tags.shuffle(&mut rng);
        let ds = Dataset::from_records(responses, tags).unwrap();
        let again = build_tdm(&ds.matrices, &ds.maps);
        prop_assert_eq!(model_json::to_json(&again), model_json::to_json(&tdm));
    }

    #[test]
    fn csv_and_json_round_trip(seed in any::<u64>()) {
        let (responses, tags, tdm) = dataset(seed);
        let sqa = write_sqa(&responses);
        let qt = write_qt(&tags);
        let ds = Dataset::from_csv(sqa.as_bytes(), qt.as_bytes()).unwrap();
        prop_assert_eq!(write_sqa(&ds.responses), sqa);
        prop_assert_eq!(write_qt(&ds.tags), qt);
        let rebuilt = build_tdm(&ds.matrices, &ds.maps);
        prop_assert_eq!(&rebuilt, &tdm);
        prop_assert_eq!(model_json::from_json(&model_json::to_json(&tdm)).unwrap(), tdm);
    }

    #[test]
    fn cumulative_is_union_of_accumulative(seed in any::<u64>(), fseed in any::<u64>()) {
        let (_, _, tdm) = dataset(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(fseed);
        let pairs = random_filter_pairs(&mut rng, &topics(&tdm), false);
        let partition = partition_levels(&tdm);
        for k in 1..=tdm.vertex_count() {
            let cumulative = compose_view(&tdm, &partition, &spec_with(&pairs, k, ViewMode::Cumulative)).unwrap();
            let union: Vec<(usize, EdgeStatus)> = (1..=k)
                .flat_map(|j| {
                    compose_view(&tdm, &partition, &spec_with(&pairs, j, ViewMode::Accumulative))
                        .unwrap()
                        .statuses
                })
                .collect();
            prop_assert_eq!(&cumulative.statuses, &union, "level {}", k);
        }
    }

    #[test]
    fn filters_grey_out_but_never_remove(seed in any::<u64>(), fseed in any::<u64>()) {
        let (_, _, tdm) = dataset(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(fseed);
        let pairs = random_filter_pairs(&mut rng, &topics(&tdm), false);
        let partition = partition_levels(&tdm);
        for k in 1..=tdm.vertex_count() {
            let view = compose_view(&tdm, &partition, &spec_with(&pairs, k, ViewMode::Cumulative)).unwrap();
            let visible: Vec<usize> = view.visible().collect();
            let expected: Vec<usize> = (0..tdm.edge_count()).filter(|&e| tdm.hyperedges()[e].arity() <= k).collect();
            prop_assert_eq!(visible, expected);
        }
    }

    #[test]
    fn adding_a_predicate_never_enlarges_the_selection(seed in any::<u64>(), fseed in any::<u64>()) {
        let (_, _, tdm) = dataset(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(fseed);
        let labels = topics(&tdm);
        let no_extremum = |p: Vec<(String, String)>| -> Vec<(String, String)> {
            p.into_iter().filter(|(k, _)| !k.ends_with("_extremum")).collect()
        };
        let base = no_extremum(random_filter_pairs(&mut rng, &labels, false));
        let extra = no_extremum(random_filter_pairs(&mut rng, &labels, false));
        let mut tighter = base.clone();
        for (k, v) in extra {
            if !tighter.iter().any(|(bk, _)| *bk == k) {
                tighter.push((k, v));
            }
        }
        let Ok(mut tight) = FilterSpec::from_pairs(tighter) else {
            // Merged bounds may invert; nothing to compare.
            return Ok(());
        };
        let mut loose = FilterSpec::from_pairs(base).unwrap();
        let top = tdm.vertex_count().max(1);
        loose.level = Some(top);
        tight.level = Some(top);
        if tdm.vertex_count() == 0 {
            return Ok(());
        }
        prop_assert!(selected_set(&tdm, &tight).is_subset(&selected_set(&tdm, &loose)));
    }

    #[test]
    fn query_round_trip(seed in any::<u64>(), fseed in any::<u64>()) {
        let (_, _, tdm) = dataset(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(fseed);
        let pairs = random_filter_pairs(&mut rng, &topics(&tdm), true);
        let spec = FilterSpec::from_pairs(pairs).unwrap();
        prop_assert_eq!(FilterSpec::from_query(&spec.to_query()).unwrap(), spec.clone());
        let req = ViewRequest { spec, ..Default::default() };
        prop_assert_eq!(ViewRequest::from_query(&req.to_query()).unwrap(), req);
    }

    #[test]
    fn layout_ignores_filters(seed in any::<u64>(), fseed in any::<u64>()) {
        let (_, _, tdm) = dataset(seed);
        let cfg = LayoutConfig::default();
        let positions = layout_vertices(&tdm, &cfg);
        let partition = partition_levels(&tdm);
        let mut rng = ChaCha8Rng::seed_from_u64(fseed);
        for _ in 0..4 {
            let spec = FilterSpec::from_pairs(random_filter_pairs(&mut rng, &topics(&tdm), true)).unwrap();
            let view = compose_view(&tdm, &partition, &spec).unwrap();
            let scene = build_scene(&tdm, &view, &positions, &cfg, false, String::new());
            let drawn: Vec<_> = scene.vertices.iter().map(|v| v.position).collect();
            prop_assert_eq!(&drawn, &positions);
        }
    }

    #[test]
    fn rendering_is_deterministic(seed in any::<u64>(), fseed in any::<u64>()) {
        let (_, _, tdm) = dataset(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(fseed);
        let pairs = random_filter_pairs(&mut rng, &topics(&tdm), true);
        let cfg = LayoutConfig::default();
        for format in ["svg", "json", "dot"] {
            let mut p = pairs.clone();
            p.push(("format".into(), format.into()));
            let req = ViewRequest::from_pairs(p).unwrap();
            prop_assert_eq!(render_view(&tdm, &req, &cfg).unwrap(), render_view(&tdm, &req, &cfg).unwrap());
        }
    }

    #[test]
    fn width_grows_with_coverage(lo in 0u64..50, span in 0u64..50, a in 0u64..100, b in 0u64..100) {
        let cfg = LayoutConfig::default();
        let range = Some((lo, lo + span));
        let (a, b) = (lo + a % (span + 1), lo + b % (span + 1));
        let (wa, wb) = (coverage_width(a, range, &cfg), coverage_width(b, range, &cfg));
        prop_assert!(wa >= cfg.stroke_min && wa <= cfg.stroke_max);
        if a <= b {
            prop_assert!(wa <= wb);
        }
    }

    #[test]
    fn ramp_stays_between_its_anchors(t in 0.0f64..=1.0) {
        let (from, to) = if t <= 0.5 {
            (Rgb(0xC2, 0x18, 0x5B), Rgb(0xA1, 0x88, 0x7F))
        } else {
            (Rgb(0xA1, 0x88, 0x7F), Rgb(0x1B, 0x5E, 0x20))
        };
        let c = ramp_color(t);
        for (x, lo, hi) in [(c.0, from.0, to.0), (c.1, from.1, to.1), (c.2, from.2, to.2)] {
            prop_assert!(x >= lo.min(hi) && x <= lo.max(hi));
        }
    }
}

#[test]
fn ramp_anchors() {
    assert_eq!(ramp_color(0.0).to_string(), "#C2185B");
    assert_eq!(ramp_color(0.5).to_string(), "#A1887F");
    assert_eq!(ramp_color(1.0).to_string(), "#1B5E20");
}

#[test]
fn equal_coverage_gets_the_middle_width() {
    let cfg = LayoutConfig::default();
    let mid = (cfg.stroke_min + cfg.stroke_max) / 2.0;
    assert_eq!(coverage_width(7, Some((7, 7)), &cfg), mid);
}
