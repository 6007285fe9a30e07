//! Finite branching space-time models and the GHZ no-common-cause argument.
//!
//! * [`causal`] and [`postulates`]: causal orders, histories, choice points,
//!   and the structural postulate checks.
//! * [`event`]: events, spreads, n-spreads, consistency grades.
//! * [`ghz`] and [`assign`]: the three-station scenario and the sign-assignment
//!   searches.
//! * [`refute`] and [`common_cause`]: the joint common-cause refuter and the
//!   concrete CC1-CC3 checks.
//! * [`quantum`]: state-vector checks of the GHZ eigenvalue facts.
//!
//! Exhaustive sweeps run on rayon when the `parallel` feature is on (the
//! default); see [`exec::Execution`].

pub mod assign;
pub mod causal;
pub mod common_cause;
pub mod document;
pub mod error;
pub mod event;
pub mod exec;
pub mod ghz;
pub mod postulates;
pub mod quantum;
pub mod refute;
pub mod report;

pub use causal::{CausalModel, Chain, History, Point};
pub use error::{Error, Result};
pub use exec::Execution;
