//! Topic dependency hypergraphs from assessment data.
//!
//! The pipeline is: [`ingest`] two CSV exports into index maps and 0/1
//! matrices, [`hypergraph::build_tdm`] the two-weighted hypergraph, split it
//! into arity [`levels`] and filter them, then [`render`] the resulting view.

pub mod hypergraph;
pub mod ingest;
pub mod levels;
pub mod matrix;
pub mod model_json;
pub mod pipeline;
pub mod render;
pub mod sample;
pub mod stats;
pub mod synth;

pub use hypergraph::{build_tdm, Achievement, Hyperedge, Tdm, TopicSet};
pub use ingest::{Dataset, IngestError};
pub use levels::{
    compose_view, partition_levels, EdgeStatus, FilterSpec, LevelPartition, ViewModel,
};
pub use pipeline::{render_view, OutputFormat, ViewError, ViewRequest};
pub use render::LayoutConfig;
