//! Property testing of unateness for functions `f: [n]^d -> R`.
//!
//! The crate is split into five layers:
//!
//! * [`hypergrid`]: domains, points, exact values, query-counted oracles and
//!   the truth-table file format.
//! * [`testers`]: the randomized unateness tester, its influential-dimension
//!   search and the directed monotonicity pair tester it delegates to.
//! * [`exact`]: ground-truth predicates and exact distances for small tables.
//! * [`instances`]: hard and control function families plus the descriptor
//!   language used to name them.
//! * [`harness`]: seeded trial runs, parameter sweeps and CSV/JSON reports.
//!
//! Dimensions are 0-based everywhere in the API. The descriptor text form and
//! the CLI use 1-based dimension numbers.

pub mod error;
pub mod exact;
pub mod harness;
pub mod hypergrid;
pub mod instances;
pub mod testers;

pub use error::{Error, Result};
pub use hypergrid::{
    concat, restrict, DimSet, Direction, Domain, FunctionOracle, HypergridFunction, Oracle,
    Orientation, PartialPoint, Point, RandomSource, Rational, TruthTable, Value,
};
