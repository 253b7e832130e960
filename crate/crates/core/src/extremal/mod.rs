//! Extremal generators and small-pattern statistics.

pub mod gen;
pub mod stats;

pub use gen::{gen_complete_bipartite, gen_disjoint_cliques, gen_grid, gen_planar_with_k4s};
pub use stats::{graph_stats, minor_degree_bounds, two_color_classes, ColorClasses, GraphStats, MinorDegreeBounds};
