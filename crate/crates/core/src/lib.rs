pub mod axioms;
pub mod cli;
pub mod decision;
pub mod error;
pub mod generate;
pub mod rule;
pub mod scores;
pub mod society;
pub mod suite;

pub use decision::{DecisionVector, Outcome, TieRule};
pub use error::{Error, Result};
pub use rule::{DecisionRule, FractionValue};
pub use society::{ActorClass, ActorId, DegreeProfile, Neighborhood, Society};
