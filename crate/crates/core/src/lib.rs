//! Inverse blunt-body solver for high-supersonic flow.
//!
//! Given a parameterized bow-shock shape, the solver evaluates the jump
//! state along the shock, integrates the shock-layer equations on
//! streamlines, and recovers the body producing the shock together with
//! its surface pressure. Shock-shape parameters can be optimized so the
//! recovered body matches a reference circle (plane flow) or sphere
//! section (axisymmetric flow), and solutions can be compared against
//! externally supplied reference fields.
//!
//! Units are dimensionless throughout: free-stream density and speed
//! are one, lengths are in units of the reference length, pressure is
//! `1/(gamma M^2)` in the free stream.

pub mod error;
pub mod gas;
pub mod layer;
pub mod quadrature;
pub mod shock;
pub mod spline;

pub use error::{Error, Result};
pub use gas::{
    inverse_compression_ratio, pitot_pressure, post_shock_state, FreestreamConditions, Geometry,
    PostShockState,
};
pub use layer::{
    axis_point, body_shape, density_at, find_body_extent, integral_stability,
    integrated_surface_pressure, pressure_at, solve_field, solve_station, u_at, y_profile,
    BodyPoint, LayerSample, StationSolution, StationSolver,
};
pub use shock::{ShockShape, ShockStation, AXIS_OFFSET};
