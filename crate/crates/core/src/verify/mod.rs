//! Numerical oracles that do not share code paths with the residual
//! formulas: lattice sweeps, flow integration and finite differences.

mod fd;
mod flow;
mod grid;

pub use fd::{fd_oracle, FdEstimate};
pub use flow::{
    flow_isometry_check, flow_refinement, pairing_along_flow, FlowReport, PairingReport, Refinement,
    DEVIATION_FLOOR, REFINEMENT_FACTOR,
};
pub use grid::{grid_residual_check, ComponentMax, GridReport};
