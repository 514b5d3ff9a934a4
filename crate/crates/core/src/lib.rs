pub mod cli;
pub mod error;
pub mod graph;
pub mod groupoid;
pub mod hom;
pub mod homotopy;
pub mod io;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, Morphism, VertexId};
pub use walk::{Parity, Walk};
