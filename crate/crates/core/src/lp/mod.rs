//! Linear-programming bounds on `beta_d`.

pub mod build;
pub mod simplex;

pub use build::{
    beta_bounds, beta_upper, build_lp, ln_floor, min_regular_excess, small_d_of,
    solve_and_exponentiate, BetaBounds, LpOptions, RegularExcess, Variant, OBJECTIVE_DENOMINATOR,
};
pub use simplex::{
    solve_lp, verify_certificate, LinearProgram, LpSolution, LpStatus, Relation, Row,
};
