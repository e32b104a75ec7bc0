//! Embedding spaces, the shared vocabulary between two of them, and exact
//! nearest-neighbor retrieval.

mod neighbors;
mod space;
mod synthetic;
mod vocab;

pub use neighbors::{Neighbor, NeighborIndex};
pub use space::{EmbeddingSpace, TextFormat};
pub use synthetic::generate_synthetic_space;
pub use vocab::SharedVocab;
