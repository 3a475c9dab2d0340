//! Netlists and nodal AC analysis.

mod netlist;
mod solve;
mod stamp;

pub use netlist::{is_ground, ElementKind, NetElement, Netlist, Port, GROUND};
pub use solve::{solve_sparams, SolveFailure, SolveReport, CONDITION_LIMIT};
pub use stamp::stamp_admittance;
