//! Solver for two-player zero-sum complex games whose strategy sets are
//! sector polytopes `{z in C^m : |arg z_i| <= a0, sum z_i = 1}`.
//!
//! The payoff to the row player is `Re(z* A w)`. The crate computes pure
//! security levels, dominated-strategy eliminations, equalizing-strategy
//! equilibria and LP-certified minimax values, and assembles them into a
//! single audited [`solver::SolveReport`].

pub mod domination;
pub mod equalizing;
pub mod error;
pub mod game;
pub mod io;
pub mod lp;
pub mod numerics;
pub mod polytope;
pub mod solver;

pub use error::{Error, Result};
pub use game::{ComplexGame, Side};
pub use numerics::{c, Complex, ComplexMatrix, Tolerances};
pub use polytope::{ExtremePointIndex, StrategyPolytope};
pub use solver::{solve, Method, SolveOptions, SolveReport};
