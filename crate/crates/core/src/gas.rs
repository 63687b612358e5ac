//! Perfect-gas free stream and oblique-shock jump relations.
//!
//! Everything is dimensionless with the free stream as the scale:
//! density and speed are unity, lengths are in units of the reference
//! length, so the free-stream pressure is fixed by the Mach number,
//! `P_inf = 1/(gamma M^2)`. Shock angles are measured in radians from
//! the free-stream direction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Flow symmetry: plane (2-D) or axisymmetric (body of revolution).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Plane,
    #[serde(rename = "axisym")]
    Axisymmetric,
}

impl Geometry {
    /// The symmetry exponent: 0 for plane flow, 1 for axisymmetric flow.
    pub fn j(self) -> u32 {
        match self {
            Geometry::Plane => 0,
            Geometry::Axisymmetric => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Geometry::Plane => "plane",
            Geometry::Axisymmetric => "axisym",
        }
    }
}

/// Free-stream state and run geometry.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FreestreamConditions {
    /// Free-stream Mach number, > 1.
    pub mach: f64,
    /// Ratio of specific heats, > 1.
    pub gamma: f64,
    /// Plane or axisymmetric flow.
    pub geometry: Geometry,
    /// Radius of the reference body (circle or sphere section), in
    /// units of the reference length.
    pub body_radius: f64,
}

impl FreestreamConditions {
    pub const DEFAULT_GAMMA: f64 = 1.4;
    pub const DEFAULT_BODY_RADIUS: f64 = 0.5;

    pub fn new(mach: f64, gamma: f64, geometry: Geometry, body_radius: f64) -> Result<Self> {
        if !(mach > 1.0) || !mach.is_finite() {
            return Err(Error::Validation(format!(
                "mach must be finite and > 1, got {mach}"
            )));
        }
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(Error::Validation(format!(
                "gamma must be finite and > 1, got {gamma}"
            )));
        }
        if !(body_radius > 0.0) || !body_radius.is_finite() {
            return Err(Error::Validation(format!(
                "body radius must be finite and > 0, got {body_radius}"
            )));
        }
        Ok(Self {
            mach,
            gamma,
            geometry,
            body_radius,
        })
    }

    /// Plane flow at the given Mach number, `gamma` 1.4, body radius 0.5.
    pub fn plane(mach: f64) -> Result<Self> {
        Self::new(
            mach,
            Self::DEFAULT_GAMMA,
            Geometry::Plane,
            Self::DEFAULT_BODY_RADIUS,
        )
    }

    /// Axisymmetric flow at the given Mach number, `gamma` 1.4, body radius 0.5.
    pub fn axisymmetric(mach: f64) -> Result<Self> {
        Self::new(
            mach,
            Self::DEFAULT_GAMMA,
            Geometry::Axisymmetric,
            Self::DEFAULT_BODY_RADIUS,
        )
    }

    /// Free-stream pressure `1/(gamma M^2)` in units of `rho_inf U_inf^2`.
    pub fn p_inf(&self) -> f64 {
        1.0 / (self.gamma * self.mach * self.mach)
    }

    /// Free-stream specific enthalpy `1/((gamma-1) M^2)` in units of `U_inf^2`.
    pub fn h_inf(&self) -> f64 {
        1.0 / ((self.gamma - 1.0) * self.mach * self.mach)
    }

    /// `sqrt(M^2 - 1)`, the cotangent of the free-stream Mach angle.
    pub fn beta_m(&self) -> f64 {
        (self.mach * self.mach - 1.0).sqrt()
    }

    /// Free-stream Mach angle `asin(1/M)` in radians.
    pub fn mach_angle(&self) -> f64 {
        (1.0 / self.mach).asin()
    }

    pub fn j(&self) -> u32 {
        self.geometry.j()
    }
}

/// State immediately behind an oblique shock of angle `beta`.
///
/// Velocities are in units of the free-stream speed, pressure in units
/// of `rho_inf U_inf^2`. The same relations hold at any point where a
/// streamline crossed the shock, with `beta` the local shock angle there.
#[derive(Debug, Clone, Copy)]
pub struct PostShockState {
    /// Velocity component tangential to the shock, `cos(beta)`.
    pub u_t: f64,
    /// Velocity component normal to the shock, `chi sin(beta)`.
    pub v_n: f64,
    /// Static pressure `P_inf + (1 - chi) sin^2(beta)`.
    pub p: f64,
    /// Inverse compression ratio `rho_inf / rho`.
    pub chi: f64,
    /// Shock angle in radians.
    pub beta: f64,
}

impl PostShockState {
    /// Post-shock density `1/chi` in free-stream units.
    pub fn rho(&self) -> f64 {
        1.0 / self.chi
    }

    /// Specific enthalpy from the perfect-gas state, `gamma/(gamma-1) P/rho`.
    pub fn specific_enthalpy(&self, fs: &FreestreamConditions) -> f64 {
        fs.gamma / (fs.gamma - 1.0) * self.p * self.chi
    }
}

fn check_oblique_validity(fs: &FreestreamConditions, beta: f64) -> Result<f64> {
    let sin_beta = beta.sin();
    let m_sin_beta = fs.mach * sin_beta;
    if sin_beta <= 0.0 || m_sin_beta < 1.0 {
        return Err(Error::WeakShock { beta, m_sin_beta });
    }
    Ok(sin_beta)
}

/// Inverse compression ratio `chi = rho_inf/rho` across an oblique shock
/// of angle `beta`:
///
/// `chi = (gamma-1)/(gamma+1) + 2 / ((gamma+1) M^2 sin^2 beta)`
///
/// Returns [`Error::WeakShock`] when `M sin(beta) < 1`.
pub fn inverse_compression_ratio(fs: &FreestreamConditions, beta: f64) -> Result<f64> {
    let sin_beta = check_oblique_validity(fs, beta)?;
    Ok(chi_from_sin2(fs, sin_beta * sin_beta))
}

/// `chi` from the squared sine of the shock angle; validity already checked.
pub(crate) fn chi_from_sin2(fs: &FreestreamConditions, sin2_beta: f64) -> f64 {
    let g = fs.gamma;
    (g - 1.0) / (g + 1.0) + 2.0 / ((g + 1.0) * fs.mach * fs.mach * sin2_beta)
}

/// Full jump state behind an oblique shock of angle `beta`.
pub fn post_shock_state(fs: &FreestreamConditions, beta: f64) -> Result<PostShockState> {
    let sin_beta = check_oblique_validity(fs, beta)?;
    let chi = chi_from_sin2(fs, sin_beta * sin_beta);
    Ok(PostShockState {
        u_t: beta.cos(),
        v_n: chi * sin_beta,
        p: fs.p_inf() + (1.0 - chi) * sin_beta * sin_beta,
        chi,
        beta,
    })
}

/// Stagnation pressure behind a normal shock (Rayleigh pitot), in units
/// of `rho_inf U_inf^2`.
///
/// The shock-layer method recovers the post-shock static pressure at the
/// stagnation point instead; the difference is the O(chi/2) term the
/// approximation drops, which makes this a useful independent check.
pub fn pitot_pressure(fs: &FreestreamConditions) -> Result<f64> {
    if !(fs.mach > 1.0) {
        return Err(Error::Validation(format!(
            "pitot pressure requires M > 1, got {}",
            fs.mach
        )));
    }
    let g = fs.gamma;
    let m2 = fs.mach * fs.mach;
    let total_over_pinf = ((g + 1.0) * m2 / 2.0).powf(g / (g - 1.0))
        / ((2.0 * g * m2 - (g - 1.0)) / (g + 1.0)).powf(1.0 / (g - 1.0));
    Ok(total_over_pinf * fs.p_inf())
}
