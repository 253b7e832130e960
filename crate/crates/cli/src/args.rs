use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "subdiv", version, about = "Expanders, structures and subdivision embeddings with checkable certificates")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Search budget: oracle nodes or structure-building visits.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Largest vertex count checked exhaustively.
    #[arg(long, global = true, default_value_t = subdiv_core::expander::DEFAULT_EXHAUSTIVE_CAP)]
    pub exhaustive_cap: usize,
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Write a run manifest (argv, input hashes, output hash, wall time).
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Text,
}

/// A graph file; `-` or absent means standard input.
#[derive(Args, Debug, Clone)]
pub struct HostArg {
    #[arg(long)]
    pub host: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct PatternArg {
    #[arg(long)]
    pub pattern: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Extract a robust expander subgraph.
    ExtractExpander {
        #[command(flatten)]
        host: HostArg,
        #[arg(long, default_value_t = 0.003)]
        eps1: f64,
        #[arg(long, default_value_t = 0.25)]
        eps2: f64,
        #[arg(long, default_value_t = subdiv_core::expander::DEFAULT_C)]
        c: f64,
        /// Sampled sets per verification when the graph is too big to enumerate.
        #[arg(long, default_value_t = 96)]
        trials: usize,
    },
    /// Check robust expansion of a whole graph.
    VerifyExpander {
        #[command(flatten)]
        host: HostArg,
        #[arg(long)]
        eps1: f64,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = subdiv_core::expander::DEFAULT_C)]
        c: f64,
        /// Sample sets instead of enumerating them.
        #[arg(long)]
        sampled: Option<usize>,
    },
    /// Shortest path between two sets avoiding a third.
    Connect {
        #[command(flatten)]
        host: HostArg,
        #[arg(long, value_delimiter = ',', required = true)]
        from: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        to: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<usize>,
    },
    /// Consecutive shortest paths with their growth profile and intersection report.
    Grow {
        #[command(flatten)]
        host: HostArg,
        #[arg(long, value_delimiter = ',', required = true)]
        source: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<usize>,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        count: usize,
    },
    Build {
        #[command(subcommand)]
        kind: Build,
    },
    /// Partition a bandwidth-ordered pattern onto a cycle or sun.
    Partition {
        #[command(subcommand)]
        target: Partition,
    },
    /// Search for an `alpha`-separator.
    Separable {
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        alpha: f64,
    },
    Transform {
        #[command(subcommand)]
        kind: Transform,
    },
    /// Bipartite subdivision of a triangulation with at most 2t-2 vertices.
    PlanarSubdivide {
        #[arg(long)]
        embedding: Option<PathBuf>,
    },
    /// Subdivide every edge not touching the independent set.
    OneSidedSubdivide {
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long, value_delimiter = ',')]
        x: Vec<usize>,
    },
    Gen {
        #[command(subcommand)]
        kind: Gen,
    },
    /// Independence, two-class and chromatic numbers.
    Stats {
        #[command(flatten)]
        host: HostArg,
    },
    /// Degree bounds for forcing the pattern as a minor.
    Bounds {
        #[command(flatten)]
        pattern: PatternArg,
    },
    Oracle {
        #[command(subcommand)]
        kind: Oracle,
    },
    /// Full embedding pipeline.
    Embed {
        #[command(flatten)]
        host: HostArg,
        #[command(flatten)]
        pattern: PatternArg,
        /// Pipeline configuration as JSON; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Also write the host with the subdivision highlighted.
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Re-run a manifest and compare the output hash.
    Replay { manifest_file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum Build {
    Star {
        #[command(flatten)]
        host: HostArg,
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<usize>,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        leaves: usize,
    },
    Unit {
        #[command(flatten)]
        host: HostArg,
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<usize>,
        #[arg(long)]
        h1: usize,
        #[arg(long)]
        h2: usize,
        #[arg(long)]
        h3: usize,
    },
    Web {
        #[command(flatten)]
        host: HostArg,
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<usize>,
        #[arg(long)]
        h0: usize,
        #[arg(long)]
        h1: usize,
        #[arg(long)]
        h2: usize,
        #[arg(long)]
        h3: usize,
    },
    /// Nakjis on a separated family of subexpanders.
    Nakji {
        #[command(flatten)]
        host: HostArg,
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<usize>,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        tau: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Family members need at least this average degree.
        #[arg(long, default_value_t = 2.0)]
        min_degree: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Partition {
    Cycle {
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: f64,
    },
    Sun {
        #[command(flatten)]
        pattern: PatternArg,
        /// Sun as JSON: `{"cycle": [...], "leaves": [[vertex, odd index], ...]}`.
        #[arg(long)]
        sun: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Transform {
    /// Split vertices of degree above the cap into trees.
    Split {
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        max_degree: usize,
    },
    /// Double the vertices outside two independent classes.
    Double {
        #[command(flatten)]
        pattern: PatternArg,
        /// Defaults to the largest pair of disjoint independent sets.
        #[arg(long, value_delimiter = ',')]
        a: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        b: Option<Vec<usize>>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Gen {
    Bipartite { s: usize, n: usize },
    Grid { dims: Vec<usize> },
    Cliques { q: usize, copies: usize },
    /// Planar graph made of K4s, written with its faces.
    PlanarK4 { t: usize },
}

#[derive(Subcommand, Debug)]
pub enum Oracle {
    Subdivision {
        #[command(flatten)]
        host: HostArg,
        #[command(flatten)]
        pattern: PatternArg,
    },
    Minor {
        #[command(flatten)]
        host: HostArg,
        #[command(flatten)]
        pattern: PatternArg,
    },
    /// Exit 0 when a K4 minor exists, 1 when the graph is K4-minor-free.
    K4free {
        #[command(flatten)]
        host: HostArg,
    },
}
