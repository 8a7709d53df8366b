//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
//!
//! Runs the real `tdm` binary where a criterion is about the command line, and
//! the HTTP router in-process for the parity check.

use std::collections::BTreeSet;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use tdm_core::hypergraph::build_tdm;
use tdm_core::levels::{compose_view, EdgeStatus, ViewMode};
use tdm_core::{partition_levels, Dataset, FilterSpec, Tdm};
use tdm_server::{router, AppState, Store};
use tdm_testkit::{
    engine_table, engine_zero_coverage, oracle_table, oracle_zero_coverage, parse_raw,
    random_filter_pairs, random_records, raw_from_records, shuffle_rows,
};
use tower::ServiceExt;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const RANDOM_DATASETS: u64 = 100;
const MODE_LAW_CASES: u64 = 120;
const PARITY_SPECS: u64 = 20;

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/sample")
}

fn sample_csv() -> (String, String) {
    let d = data_dir();
    (
        fs::read_to_string(d.join("SQA.csv")).expect("SQA.csv"),
        fs::read_to_string(d.join("QT.csv")).expect("QT.csv"),
    )
}

fn sample_tdm() -> Tdm {
    let (sqa, qt) = sample_csv();
    let ds = Dataset::from_csv(sqa.as_bytes(), qt.as_bytes()).expect("sample data parses");
    build_tdm(&ds.matrices, &ds.maps)
}

fn random_tdm(
    seed: u64,
) -> (
    Vec<tdm_core::ingest::ResponseRecord>,
    Vec<tdm_core::ingest::TagRecord>,
    Tdm,
) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (responses, tags) = random_records(&mut rng);
    let ds = Dataset::from_records(responses.clone(), tags.clone()).expect("random data is valid");
    let tdm = build_tdm(&ds.matrices, &ds.maps);
    (responses, tags, tdm)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ids(edges: &[usize]) -> Vec<String> {
    edges.iter().map(|&e| Tdm::edge_id(e)).collect()
}

struct Tdmx {
    dir: tempfile::TempDir,
}

impl Tdmx {
    fn new() -> Self {
        Self {
            dir: tempfile::tempdir().expect("temp dir"),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[String]) -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_tdm"))
            .args(args)
            .current_dir(self.dir.path())
            .output()
            .map_err(|e| format!("spawning tdm: {e}"))?;
        if !out.status.success() {
            return Err(format!(
                "tdm {} exited with {}: {}",
                args.join(" "),
                out.status,
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        Ok(out.stdout)
    }

    fn build(&self, sqa: &Path, qt: &Path, out: &str) -> Result<Vec<u8>, String> {
        self.run(&[
            "build".into(),
            "--sqa".into(),
            sqa.display().to_string(),
            "--qt".into(),
            qt.display().to_string(),
            "--out".into(),
            out.into(),
        ])?;
        fs::read(self.path(out)).map_err(|e| e.to_string())
    }

    /// `tdm view --model <model>` with one `--key=value` flag per query pair.
    fn view(&self, model: &str, pairs: &[(String, String)]) -> Result<Vec<u8>, String> {
        let mut args = vec!["view".to_string(), "--model".into(), model.into()];
        for (k, v) in pairs {
            if matches!(k.as_str(), "strip" | "include_empty" | "hide_greyed") {
                args.push(format!("--{}", k.replace('_', "-")));
            } else {
                args.push(format!("--{}={v}", k.replace('_', "-")));
            }
        }
        self.run(&args)
    }
}

fn worked_numbers() -> Check {
    let start = Instant::now();
    let tdm = sample_tdm();
    let pos = tdm.find_edge(&["T1", "T4"]).ok_or("no {T1,T4} edge")?;
    let e = &tdm.hyperedges()[pos];
    let mut parts: Vec<(String, u64)> = e
        .contributors
        .iter()
        .map(|c| (c.question_id.clone(), c.attempts))
        .collect();
    parts.sort();
    let want = vec![
        ("Q11".to_string(), 4),
        ("Q5".to_string(), 4),
        ("Q7".to_string(), 5),
    ];
    ensure(e.coverage == 13, || {
        format!("coverage {} != 13", e.coverage)
    })?;
    ensure(parts == want, || format!("contributors {parts:?}"))?;
    let a = e.achievement();
    ensure((a.numerator(), a.denominator()) == (7, 13), || {
        format!("achievement {a}")
    })?;
    ensure(a.display_2dp() == "0.54", || {
        format!("displayed {}", a.display_2dp())
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{{T1,T4}} coverage 13 = Q5:4 + Q7:5 + Q11:4, achievement 7/13 = 0.54, {elapsed:.2?}"
    ))
}

fn level_table() -> Check {
    let tdm = sample_tdm();
    let partition = partition_levels(&tdm);
    let levels: Vec<Vec<String>> = partition.iter().map(|(_, e)| ids(e)).collect();
    let want: Vec<Vec<&str>> = vec![
        vec!["h1", "h2", "h3"],
        vec!["h4", "h5", "h6", "h7"],
        vec!["h8", "h9"],
        vec!["h10", "h11"],
        vec![],
        vec![],
    ];
    ensure(levels == want, || format!("levels {levels:?}"))?;
    let mut filtered = Vec::new();
    for k in 1..=6 {
        let spec = FilterSpec::from_query(&format!("topics=T1&level={k}&mode=accumulative"))
            .map_err(|e| e.to_string())?;
        let view = compose_view(&tdm, &partition, &spec).map_err(|e| e.to_string())?;
        filtered.push(ids(&view.selected()));
    }
    let want: Vec<Vec<&str>> = vec![
        vec!["h1"],
        vec!["h4", "h5"],
        vec!["h8", "h9"],
        vec!["h10"],
        vec![],
        vec![],
    ];
    ensure(filtered == want, || format!("T1 filter {filtered:?}"))?;
    Ok("levels 3/4/2/2/0/0 and T1 filter {h1} / {h4,h5} / {h8,h9} / {h10} / - / -".into())
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let (sqa, qt) = sample_csv();
    let tdm = sample_tdm();
    let raw = parse_raw(&sqa, &qt);
    ensure(engine_table(&tdm) == oracle_table(&raw), || {
        "sample data edge table differs".into()
    })?;
    for seed in 0..RANDOM_DATASETS {
        let (responses, tags, tdm) = random_tdm(seed);
        let raw = raw_from_records(&responses, &tags);
        ensure(engine_table(&tdm) == oracle_table(&raw), || {
            format!("seed {seed}: edge table differs")
        })?;
        ensure(
            engine_zero_coverage(&tdm) == oracle_zero_coverage(&raw),
            || format!("seed {seed}: zero-coverage sets differ"),
        )?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "sample data + {RANDOM_DATASETS} random data sets, {elapsed:.2?}"
    ))
}

fn conservation() -> Check {
    let (sqa, qt) = sample_csv();
    let cells = parse_raw(&sqa, &qt).sqa.len() as u64;
    let total = sample_tdm().total_coverage();
    ensure(total == cells, || {
        format!("sample data: coverage sum {total} != {cells} attempted cells")
    })?;
    for seed in 0..RANDOM_DATASETS {
        let (responses, _, tdm) = random_tdm(seed);
        ensure(tdm.total_coverage() == responses.len() as u64, || {
            format!("seed {seed}")
        })?;
    }
    Ok(format!(
        "sample data: sum of coverage = {total} = attempted cells; holds on {RANDOM_DATASETS} random data sets"
    ))
}

fn mode_law() -> Check {
    let mut checked = 0usize;
    for case in 0..MODE_LAW_CASES {
        let (_, _, tdm) = random_tdm(10_000 + case);
        let topics: Vec<String> = tdm.vertices().iter().map(|v| v.label.clone()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(case);
        let pairs = random_filter_pairs(&mut rng, &topics, false);
        let partition = partition_levels(&tdm);
        let view = |k: usize, mode: ViewMode| {
            let mut spec = FilterSpec::from_pairs(pairs.clone()).expect("valid pairs");
            spec.level = Some(k);
            spec.mode = mode;
            compose_view(&tdm, &partition, &spec)
                .expect("valid view")
                .statuses
        };
        for k in 1..=tdm.vertex_count() {
            let union: Vec<(usize, EdgeStatus)> = (1..=k)
                .flat_map(|j| view(j, ViewMode::Accumulative))
                .collect();
            ensure(view(k, ViewMode::Cumulative) == union, || {
                format!("case {case}, level {k}, {pairs:?}")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{MODE_LAW_CASES} data set/filter cases, {checked} levels compared"
    ))
}

fn edge_by_topics<'a>(panel: &'a Value, topics: &[&str]) -> Option<&'a Value> {
    panel["edges"].as_array()?.iter().find(|e| {
        let t: Vec<&str> = e["topics"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t.as_str().unwrap())
            .collect();
        t == topics
    })
}

fn achievement_filter() -> Check {
    let x = Tdmx::new();
    let d = data_dir();
    x.build(&d.join("SQA.csv"), &d.join("QT.csv"), "model.json")?;
    let pairs: Vec<(String, String)> = [
        ("achv_max", "0.6"),
        ("level", "3"),
        ("mode", "cumulative"),
        ("format", "json"),
    ]
    .iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect();
    let out = x.view("model.json", &pairs)?;
    let report: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let panel = &report["panels"][0];
    let level3 = panel["levels"]
        .as_array()
        .and_then(|l| l.iter().find(|l| l["level"] == 3))
        .ok_or("no level 3 in report")?;
    let low = edge_by_topics(panel, &["T1", "T4", "T5"]).ok_or("no {T1,T4,T5}")?;
    let high = edge_by_topics(panel, &["T1", "T2", "T6"]).ok_or("no {T1,T2,T6}")?;
    ensure(level3["selected"] == serde_json::json!([low["id"]]), || {
        format!("selected {}", level3["selected"])
    })?;
    ensure(level3["greyed"] == serde_json::json!([high["id"]]), || {
        format!("greyed {}", level3["greyed"])
    })?;

    // The achievements come from the oracle, not the engine.
    let (sqa, qt) = sample_csv();
    let table = oracle_table(&parse_raw(&sqa, &qt));
    let key = |t: &[&str]| t.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let (lc, lk) = table[&key(&["T1", "T4", "T5"])];
    let (hc, hk) = table[&key(&["T1", "T2", "T6"])];
    ensure((lk, lc) == (1, 5), || {
        format!("oracle {{T1,T4,T5}} {lk}/{lc}")
    })?;
    ensure((hk, hc) == (3, 3), || {
        format!("oracle {{T1,T2,T6}} {hk}/{hc}")
    })?;
    ensure(
        (
            low["achievement_num"].as_u64(),
            low["achievement_den"].as_u64(),
        ) == (Some(lk), Some(lc)),
        || format!("engine {{T1,T4,T5}} {}", low["achievement"]),
    )?;
    Ok(format!(
        "level 3 selects {} {{T1,T4,T5}} (1/5 = 0.20), greys {} {{T1,T2,T6}} (3/3 = 1.00)",
        low["id"].as_str().unwrap_or("?"),
        high["id"].as_str().unwrap_or("?")
    ))
}

fn determinism() -> Check {
    let x = Tdmx::new();
    let d = data_dir();
    let (sqa, qt) = (d.join("SQA.csv"), d.join("QT.csv"));
    let a = x.build(&sqa, &qt, "a.json")?;
    let b = x.build(&sqa, &qt, "b.json")?;
    ensure(a == b, || "model JSON differs between runs".into())?;

    let (sqa_text, qt_text) = sample_csv();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut shuffled_models = BTreeSet::new();
    for i in 0..3 {
        let (s, q) = (
            x.path(&format!("sqa{i}.csv")),
            x.path(&format!("qt{i}.csv")),
        );
        fs::write(&s, shuffle_rows(&sqa_text, &mut rng)).map_err(|e| e.to_string())?;
        fs::write(&q, shuffle_rows(&qt_text, &mut rng)).map_err(|e| e.to_string())?;
        let m = x.build(&s, &q, &format!("p{i}.json"))?;
        shuffled_models.insert(m == a);
    }
    ensure(shuffled_models == BTreeSet::from([true]), || {
        "row order changed the model".into()
    })?;

    let queries: Vec<Vec<(String, String)>> = vec![
        vec![],
        vec![
            ("topics".into(), "T1".into()),
            ("level".into(), "4".into()),
            ("mode".into(), "accumulative".into()),
            ("strip".into(), "true".into()),
        ],
        vec![
            ("achv_max".into(), "0.6".into()),
            ("level".into(), "3".into()),
        ],
    ];
    let mut outputs = 0;
    for q in &queries {
        for format in ["svg", "json"] {
            let mut pairs = q.clone();
            pairs.push(("format".into(), format.into()));
            let first = x.view("a.json", &pairs)?;
            let second = x.view("a.json", &pairs)?;
            let permuted = x.view("p0.json", &pairs)?;
            ensure(first == second && first == permuted, || {
                format!("{format} output differs for {q:?}")
            })?;
            outputs += 1;
        }
    }
    Ok(format!(
        "build x2 and 3 row permutations give identical model bytes; {outputs} SVG/JSON views identical"
    ))
}

fn cli_server_parity() -> Check {
    let x = Tdmx::new();
    let d = data_dir();
    x.build(&d.join("SQA.csv"), &d.join("QT.csv"), "model.json")?;
    let (sqa, qt) = sample_csv();
    let runtime = tokio::runtime::Builder::new_current_thread()
        .enable_all()
        .build()
        .map_err(|e| e.to_string())?;
    let app = router(AppState::new(Store::in_memory()));
    let get = |req: Request<Body>| -> Result<(StatusCode, Vec<u8>), String> {
        runtime.block_on(async {
            let res = app.clone().oneshot(req).await.map_err(|e| e.to_string())?;
            let status = res.status();
            let body = res
                .into_body()
                .collect()
                .await
                .map_err(|e| e.to_string())?
                .to_bytes();
            Ok((status, body.to_vec()))
        })
    };
    let upload = serde_json::json!({ "sqa": sqa, "qt": qt }).to_string();
    let (status, body) = get(Request::post("/datasets").body(Body::from(upload)).unwrap())?;
    ensure(status == StatusCode::CREATED, || {
        format!("upload gave {status}")
    })?;
    let created: Value = serde_json::from_slice(&body).map_err(|e| e.to_string())?;
    let id = created["id"].as_str().ok_or("no id")?.to_string();

    let topics: Vec<String> = (1..=6).map(|i| format!("T{i}")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..PARITY_SPECS {
        let mut pairs = random_filter_pairs(&mut rng, &topics, true);
        if i % 4 == 3 {
            pairs.push(("strip".into(), "true".into()));
        }
        let mut query_pairs = pairs.clone();
        query_pairs.push(("format".into(), "svg".into()));
        let query = form_query(&query_pairs);
        let (status, server) = get(Request::get(format!("/datasets/{id}/view?{query}"))
            .body(Body::empty())
            .unwrap())?;
        ensure(status == StatusCode::OK, || {
            format!("GET ?{query} gave {status}")
        })?;
        let cli = x.view("model.json", &pairs)?;
        ensure(cli == server, || format!("bytes differ for ?{query}"))?;
    }
    Ok(format!(
        "{PARITY_SPECS} random filter specs: server SVG bytes == CLI SVG bytes"
    ))
}

fn form_query(pairs: &[(String, String)]) -> String {
    pairs
        .iter()
        .map(|(k, v)| format!("{k}={}", v.replace(',', "%2C")))
        .collect::<Vec<_>>()
        .join("&")
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("worked numbers", worked_numbers),
        ("level table reproduction", level_table),
        ("oracle equivalence", oracle_equivalence),
        ("conservation", conservation),
        ("mode law", mode_law),
        ("achievement filter", achievement_filter),
        ("determinism", determinism),
        ("cli/server parity", cli_server_parity),
    ];
    // Failures are reported on the criterion line; keep panic noise out.
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = match panic::catch_unwind(AssertUnwindSafe(check)) {
            Ok(r) => r,
            Err(p) => Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("PASS  {name}: {detail} ({ms} ms)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why} ({ms} ms)");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
