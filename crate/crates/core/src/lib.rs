//! Exact spanning-tree counting and the vertex-addition / cut / LP pipeline
//! for lower bounds on the number of spanning trees of bounded-degree graphs.

pub mod canon;
pub mod count;
pub mod cut;
pub mod cutlemma;
pub mod dissect;
pub mod enumgen;
pub mod error;
pub mod factors;
pub mod graph;
pub mod hp;
pub mod io;
pub mod lp;
pub mod oracle;

pub use canon::{canonical_form, CanonicalGraph};
pub use count::{beta_of, cyclomatic, spanning_tree_count, weighted_tree_sum};
pub use cut::{min_cut, CutResult};
pub use cutlemma::{
    enumerate_conditions, greedy_partition, verify_conditions, CutCondition, GreedyPartition,
};
pub use dissect::{dissect_graph, multiplier_product, validate_trace, DissectionTrace};
pub use enumgen::{count_graphs, generate_graphs, ShardDescriptor};
pub use error::{Error, Result};
pub use factors::{
    apex_limit_graph, closed_form_f, factor_of_subgraph, factor_table, ApexLimitGraph, FactorTable,
};
pub use graph::{SimpleGraph, WeightedGraph};
pub use hp::Real;
pub use io::{parse_graph, write_graph, GraphFormat};
pub use lp::{
    beta_bounds, build_lp, solve_lp, verify_certificate, LinearProgram, LpSolution, Variant,
};
pub use num_rational::BigRational;
