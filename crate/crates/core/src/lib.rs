//! Sublinear-expander machinery for embedding bounded-degree subdivisions:
//! robust-expander extraction and certification, avoidance routing,
//! sun/unit/web/nakji builders, bandwidth partitions, pattern transforms,
//! planar bipartite subdivisions, extremal generators and exact oracles.

pub mod dot;
pub mod error;
pub mod expander;
pub mod extremal;
pub mod flow;
pub mod graph;
pub mod hpartition;
pub mod matching;
pub mod oracle;
pub mod pathfinder;
pub mod pipeline;
pub mod planar;
pub mod structures;
pub mod transforms;

pub use error::{Error, Result, Violation};
pub use graph::{parse_edge_list, write_edge_list, AvgDegree, Distance, Graph, Path, Subgraph, VertexSet};
