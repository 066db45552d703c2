//! Equilibrium checking for binary extensive-form games, finite and
//! infinite.
//!
//! Finite games get backward induction, convertibility and Nash checks.
//! Infinite "spine" games (one infinite leftward path with finite right
//! subgames hanging off it) are described either by a periodic template
//! with payoffs affine in the stage index, which makes the equilibrium
//! questions decidable, or by a step function, which makes them
//! semi-decidable. [`escalation`] builds the dollar auction on top.

pub mod affine;
pub mod corpus;
pub mod escalation;
pub mod fingame;
pub mod infgame;
pub mod model;
pub mod report;
pub mod syntax;
pub mod verdict;

pub use model::{AgentId, AgentSet, Choice, GeNat, LeNum, Preference, UtilityAssignment};
pub use verdict::{Verdict, VerdictKind};
