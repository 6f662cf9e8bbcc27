//! Dataset schema and file formats: judged query-item pairs (JSONL),
//! precomputed image vectors, and the `CMXF` binary matrix format used for
//! every dense artifact in the pipeline.

mod feature_matrix;
mod matrix_file;
mod pairs;
mod views;

pub use feature_matrix::FeatureMatrix;
pub use matrix_file::{decode_matrix, encode_matrix, read_matrix, write_matrix, MAGIC, VERSION};
pub use pairs::{load_pairs, parse_pairs, write_pairs, LoadedPairs, QueryItemPair, Rejection};
pub use views::{assemble_views, AlignedViews, ImageFeatureStore, DEFAULT_IMAGE_DIM};
