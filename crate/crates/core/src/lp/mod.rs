//! Linear programming: the simplex engine, the real embedding of the minimax
//! programs and the complementarity form of the game.

pub mod embed;
pub mod lcp;
pub mod simplex;

pub use embed::{embed_player, minimax, MinimaxResult, RealEmbeddedLP};
pub use lcp::{build_lcp, lcp_candidate, verify_lcp, ComplexLcpInstance, LcpReport};
pub use simplex::{simplex_solve, LinearProgram, LpOutcome, LpSolution, Relation, Sense, VarBound};
