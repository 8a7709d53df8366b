//! The six-student, fifteen-question illustrative dataset.

use crate::hypergraph::{build_tdm, Tdm};
use crate::ingest::Dataset;

pub const SAMPLE_SQA: &str = include_str!("../data/sample/SQA.csv");
pub const SAMPLE_QT: &str = include_str!("../data/sample/QT.csv");

pub fn sample_dataset() -> Dataset {
    Dataset::from_csv(SAMPLE_SQA.as_bytes(), SAMPLE_QT.as_bytes())
        .expect("bundled sample data is valid")
}

pub fn sample_model() -> Tdm {
    let ds = sample_dataset();
    build_tdm(&ds.matrices, &ds.maps)
}
