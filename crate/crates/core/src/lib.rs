pub mod canon;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod pattern;
pub mod planar;

pub use error::{Error, Result};
pub use graph::Graph;
