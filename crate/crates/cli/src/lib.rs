//! Batch harness around `mixlay-core`: corpus input, classification
//! reports and arc-diagram rendering. The `mixlay` binary is a thin clap
//! front end over this library.

pub mod classify;
pub mod input;
pub mod render;

pub use classify::{classify, ClassificationReport, ClassifyOptions, GraphRecord, Query, QueryResult, RowCounts, Status};
pub use input::{load_graph, load_graphs, read_input, HarnessError};
pub use render::{arc_diagram_svg, render_arc_diagram};
