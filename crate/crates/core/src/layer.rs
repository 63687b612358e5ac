//! Shock-layer solution on streamlines: pressure and layer-thickness
//! integrals, state reconstruction, body recovery and surface functionals.
//!
//! For a station N on the shock (radius `r`, angle `beta`, curvature
//! `kappa`, stream function `Psi`), the pressure at stream function
//! `psi` inside the layer is
//!
//! ```text
//! P(psi) = P_N - (kappa / r^j) * \int_psi^Psi u_p(psi') dpsi'
//! u_p    = sqrt(cos^2 b* + (2 h_inf + sin^2 b*) (1 - (sin^2 b / sin^2 b*)^((g-1)/g)))
//! ```
//!
//! where `b*(psi')` is the shock angle where the streamline `psi'`
//! crossed the shock. The distance from the shock follows from
//!
//! ```text
//! Y(psi) = \int_psi^Psi dpsi' / (rho u),
//! ```
//!
//! with `rho` and `u` evaluated isentropically along each streamline at
//! the local pressure `P(psi')`; plane flow takes `y = Y` directly while
//! axisymmetric flow solves the quadratic `y (1 - y cos(b)/(2r)) = Y/r`.
//! The body is the `psi = 0` streamline.
//!
//! Each station carries a cumulative panel decomposition of the two
//! integrands, so pressure lookups inside the thickness integrand cost a
//! partial panel instead of a fresh integration.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gas::{chi_from_sin2, post_shock_state, FreestreamConditions, PostShockState};
use crate::quadrature::CumulativeIntegral;
use crate::shock::{ShockShape, ShockStation, AXIS_OFFSET};

/// One solved point inside the shock layer.
#[derive(Debug, Clone, Copy)]
pub struct LayerSample {
    /// Normalized stream function of the streamline through the point.
    pub psi: f64,
    /// Shock angle where that streamline crossed the shock.
    pub beta_star: f64,
    /// Static pressure.
    pub p: f64,
    /// Density.
    pub rho: f64,
    /// Streamwise speed from the energy equation.
    pub u: f64,
    /// Raw thickness integral value.
    pub y_cap: f64,
    /// Distance from the shock along the station normal.
    pub y: f64,
    /// Cartesian position.
    pub z: f64,
    pub r: f64,
}

/// All samples of one station, ordered from the shock (`psi = Psi`) to
/// the body (`psi = 0`).
#[derive(Debug, Clone)]
pub struct StationSolution {
    pub station: ShockStation,
    pub samples: Vec<LayerSample>,
}

/// One recovered body point with its surface pressure and the local
/// shock-layer thickness.
#[derive(Debug, Clone, Copy)]
pub struct BodyPoint {
    pub z: f64,
    pub r: f64,
    pub p_b: f64,
    pub delta: f64,
}

/// Slack for square-root arguments that dip below zero by roundoff.
const RADICAND_SLACK: f64 = 1e-12;

struct StarTerms {
    sin2: f64,
    cos2: f64,
    chi: f64,
}

fn star_terms(fs: &FreestreamConditions, shape: &ShockShape, psi: f64) -> Result<StarTerms> {
    let st = shape.locate_s(psi)?;
    let sin_b = st.beta_hat.sin();
    let sin2 = sin_b * sin_b;
    if fs.mach * sin_b < 1.0 {
        return Err(Error::WeakShock {
            beta: st.beta_hat,
            m_sin_beta: fs.mach * sin_b,
        });
    }
    Ok(StarTerms {
        sin2,
        cos2: 1.0 - sin2,
        chi: chi_from_sin2(fs, sin2),
    })
}

fn checked_sqrt(radicand: f64, context: &'static str) -> Result<f64> {
    if radicand < -RADICAND_SLACK {
        return Err(Error::NegativeRadicand {
            context,
            value: radicand,
        });
    }
    Ok(radicand.max(0.0).sqrt())
}

/// Streamwise speed surrogate from the energy equation,
/// `u^2 = cos^2 b* + (2 h_inf + sin^2 b*) (1 - (P sin^2 b / (P_N sin^2 b*))^((g-1)/g))`.
pub fn u_at(
    fs: &FreestreamConditions,
    beta_star: f64,
    p: f64,
    p_hat: f64,
    beta_hat: f64,
) -> Result<f64> {
    let sin2_star = beta_star.sin().powi(2);
    let sin2_hat = beta_hat.sin().powi(2);
    let ratio = p * sin2_hat / (p_hat * sin2_star);
    let eta = (fs.gamma - 1.0) / fs.gamma;
    let two_h_inf = 2.0 * fs.h_inf();
    let radicand =
        (1.0 - sin2_star) + (two_h_inf + sin2_star) * (1.0 - ratio.powf(eta));
    checked_sqrt(radicand, "energy-equation speed")
}

/// Density at pressure `p` on the streamline that crossed the shock at
/// angle `beta_star`, relative to the station's jump state.
pub fn density_at(
    fs: &FreestreamConditions,
    station: &ShockStation,
    beta_star: f64,
    p: f64,
) -> Result<f64> {
    let post = post_shock_state(fs, station.beta_hat)?;
    let sin2_star = beta_star.sin().powi(2);
    if fs.mach * beta_star.sin() < 1.0 {
        return Err(Error::WeakShock {
            beta: beta_star,
            m_sin_beta: fs.mach * beta_star.sin(),
        });
    }
    let chi_star = chi_from_sin2(fs, sin2_star);
    let sin2_hat = station.beta_hat.sin().powi(2);
    let ratio = p * sin2_hat / (post.p * sin2_star);
    Ok(ratio.powf(1.0 / fs.gamma) / chi_star)
}

fn pressure_integrand<'a>(
    fs: &'a FreestreamConditions,
    shape: &'a ShockShape,
    sin2_hat: f64,
) -> impl Fn(f64) -> Result<f64> + 'a {
    let eta = (fs.gamma - 1.0) / fs.gamma;
    let two_h_inf = 2.0 * fs.h_inf();
    move |psi: f64| {
        let s = star_terms(fs, shape, psi)?;
        let pow_term = (sin2_hat / s.sin2).powf(eta);
        let radicand = s.cos2 + (two_h_inf + s.sin2) * (1.0 - pow_term);
        checked_sqrt(radicand, "pressure integrand")
    }
}

#[allow(clippy::too_many_arguments)]
fn thickness_integrand<'a, F>(
    fs: &'a FreestreamConditions,
    shape: &'a ShockShape,
    sin2_hat: f64,
    p_hat: f64,
    kr: f64,
    p_cum: &'a CumulativeIntegral,
    u_p: &'a F,
) -> impl Fn(f64) -> Result<f64> + 'a
where
    F: Fn(f64) -> Result<f64>,
{
    let inv_gamma = 1.0 / fs.gamma;
    let two_h_inf = 2.0 * fs.h_inf();
    let p_total = p_cum.total();
    move |psi: f64| {
        let s = star_terms(fs, shape, psi)?;
        let p = p_hat - kr * (p_total - p_cum.eval_to(u_p, psi)?);
        if !(p > 0.0) {
            return Err(Error::InvalidShape(format!(
                "nonpositive layer pressure {p:.3e} at psi = {psi:.6e}"
            )));
        }
        let ratio = p * sin2_hat / (p_hat * s.sin2);
        let t = ratio.powf(inv_gamma);
        // ratio^((g-1)/g) = ratio / t; density factor is 1/t
        let radicand = s.cos2 + (two_h_inf + s.sin2) * (1.0 - ratio / t);
        let u = checked_sqrt(radicand, "layer thickness integrand")?;
        if u == 0.0 {
            return Err(Error::NegativeRadicand {
                context: "layer thickness integrand (stagnant node)",
                value: 0.0,
            });
        }
        Ok(s.chi / (t * u))
    }
}

/// Per-station evaluation context. Builds the cumulative decompositions
/// of the two integrands lazily and memoizes pressure values by their
/// stream-function bits.
pub struct StationSolver<'a> {
    fs: &'a FreestreamConditions,
    shape: &'a ShockShape,
    station: ShockStation,
    post: PostShockState,
    sin2_hat: f64,
    /// `kappa / r^j`.
    kr: f64,
    pressure_cum: Option<CumulativeIntegral>,
    thickness_cum: Option<CumulativeIntegral>,
    p_memo: HashMap<u64, f64>,
}

impl<'a> StationSolver<'a> {
    pub fn new(
        fs: &'a FreestreamConditions,
        shape: &'a ShockShape,
        station: ShockStation,
    ) -> Result<Self> {
        let post = post_shock_state(fs, station.beta_hat)?;
        let sin_b = station.beta_hat.sin();
        let kr = match fs.j() {
            0 => station.kappa_hat,
            _ => station.kappa_hat / station.r_hat,
        };
        Ok(Self {
            fs,
            shape,
            station,
            post,
            sin2_hat: sin_b * sin_b,
            kr,
            pressure_cum: None,
            thickness_cum: None,
            p_memo: HashMap::new(),
        })
    }

    pub fn station(&self) -> &ShockStation {
        &self.station
    }

    /// Jump state at this station's shock angle.
    pub fn post_shock(&self) -> &PostShockState {
        &self.post
    }

    fn check_psi(&self, psi: f64) -> Result<()> {
        if psi < 0.0 || psi > self.station.psi_hat * (1.0 + 1e-12) {
            return Err(Error::OutOfDomain(format!(
                "psi = {psi} outside [0, {}]",
                self.station.psi_hat
            )));
        }
        Ok(())
    }

    fn ensure_pressure_cum(&mut self) -> Result<()> {
        if self.pressure_cum.is_none() {
            let u_p = pressure_integrand(self.fs, self.shape, self.sin2_hat);
            let cum = CumulativeIntegral::build(&u_p, 0.0, self.station.psi_hat)?;
            self.pressure_cum = Some(cum);
        }
        Ok(())
    }

    fn ensure_thickness_cum(&mut self) -> Result<()> {
        self.ensure_pressure_cum()?;
        if self.thickness_cum.is_none() {
            let u_p = pressure_integrand(self.fs, self.shape, self.sin2_hat);
            let p_cum = self.pressure_cum.as_ref().unwrap();
            let g = thickness_integrand(
                self.fs,
                self.shape,
                self.sin2_hat,
                self.post.p,
                self.kr,
                p_cum,
                &u_p,
            );
            let cum = CumulativeIntegral::build(&g, 0.0, self.station.psi_hat)?;
            self.thickness_cum = Some(cum);
        }
        Ok(())
    }

    /// Static pressure at stream function `psi`; exactly the jump value
    /// at `psi = Psi`.
    pub fn pressure(&mut self, psi: f64) -> Result<f64> {
        self.check_psi(psi)?;
        if psi >= self.station.psi_hat {
            return Ok(self.post.p);
        }
        if let Some(&p) = self.p_memo.get(&psi.to_bits()) {
            return Ok(p);
        }
        self.ensure_pressure_cum()?;
        let cum = self.pressure_cum.as_ref().unwrap();
        let u_p = pressure_integrand(self.fs, self.shape, self.sin2_hat);
        let p = self.post.p - self.kr * (cum.total() - cum.eval_to(&u_p, psi)?);
        self.p_memo.insert(psi.to_bits(), p);
        Ok(p)
    }

    /// Thickness integral `Y` and normal distance `y` at `psi`.
    pub fn thickness(&mut self, psi: f64) -> Result<(f64, f64)> {
        self.check_psi(psi)?;
        if psi >= self.station.psi_hat {
            return Ok((0.0, 0.0));
        }
        self.ensure_thickness_cum()?;
        let y_cap = {
            let cum = self.thickness_cum.as_ref().unwrap();
            let u_p = pressure_integrand(self.fs, self.shape, self.sin2_hat);
            let p_cum = self.pressure_cum.as_ref().unwrap();
            let g = thickness_integrand(
                self.fs,
                self.shape,
                self.sin2_hat,
                self.post.p,
                self.kr,
                p_cum,
                &u_p,
            );
            cum.total() - cum.eval_to(&g, psi)?
        };
        let y = self.normal_distance(y_cap)?;
        Ok((y_cap, y))
    }

    /// Recover the normal distance from the raw integral: identity in
    /// plane flow, root of the area quadratic in axisymmetric flow.
    fn normal_distance(&self, y_cap: f64) -> Result<f64> {
        match self.fs.j() {
            0 => Ok(y_cap),
            _ => {
                let r = self.station.r_hat;
                let cos_b = self.station.beta_hat.cos();
                let x = 2.0 * y_cap * cos_b / (r * r);
                if x > 1.0 + RADICAND_SLACK {
                    return Err(Error::NegativeRadicand {
                        context: "axisymmetric layer recovery",
                        value: 1.0 - x,
                    });
                }
                let root = (1.0 - x).max(0.0).sqrt();
                Ok(2.0 * y_cap / (r * (1.0 + root)))
            }
        }
    }

    /// Full layer sample at `psi`, including the Cartesian position.
    pub fn sample(&mut self, psi: f64) -> Result<LayerSample> {
        let p = self.pressure(psi)?;
        let (y_cap, y) = self.thickness(psi)?;
        let star = self.shape.locate_s(psi)?;
        let rho = density_at(self.fs, &self.station, star.beta_hat, p)?;
        let u = u_at(self.fs, star.beta_hat, p, self.post.p, self.station.beta_hat)?;
        Ok(LayerSample {
            psi,
            beta_star: star.beta_hat,
            p,
            rho,
            u,
            y_cap,
            y,
            z: self.station.z_hat + y * self.station.beta_hat.sin(),
            r: self.station.r_hat - y * self.station.beta_hat.cos(),
        })
    }

    /// The `psi = 0` body point below this station.
    pub fn body_point(&mut self) -> Result<BodyPoint> {
        let p_b = self.pressure(0.0)?;
        let (_, delta) = self.thickness(0.0)?;
        Ok(BodyPoint {
            z: self.station.z_hat + delta * self.station.beta_hat.sin(),
            r: self.station.r_hat - delta * self.station.beta_hat.cos(),
            p_b,
            delta,
        })
    }
}

/// Pressure at `(station, psi)`.
pub fn pressure_at(
    fs: &FreestreamConditions,
    shape: &ShockShape,
    station: ShockStation,
    psi: f64,
) -> Result<f64> {
    StationSolver::new(fs, shape, station)?.pressure(psi)
}

/// `(psi, Y, y)` along a descending stream-function grid at one station.
pub fn y_profile(
    fs: &FreestreamConditions,
    shape: &ShockShape,
    station: ShockStation,
    psi_grid: &[f64],
) -> Result<Vec<(f64, f64, f64)>> {
    let mut solver = StationSolver::new(fs, shape, station)?;
    psi_grid
        .iter()
        .map(|&psi| {
            let (y_cap, y) = solver.thickness(psi)?;
            Ok((psi, y_cap, y))
        })
        .collect()
}

/// Solve one station on a uniform stream-function grid from the shock
/// value down to zero.
pub fn solve_station(
    fs: &FreestreamConditions,
    shape: &ShockShape,
    station: ShockStation,
    n_streamlines: usize,
) -> Result<StationSolution> {
    if n_streamlines < 2 {
        return Err(Error::DegenerateInput(format!(
            "need at least 2 streamlines, got {n_streamlines}"
        )));
    }
    let mut solver = StationSolver::new(fs, shape, station)?;
    let n = n_streamlines;
    let mut samples = Vec::with_capacity(n);
    for k in 0..n {
        let psi = station.psi_hat * (n - 1 - k) as f64 / (n - 1) as f64;
        samples.push(solver.sample(psi)?);
    }
    Ok(StationSolution {
        station,
        samples,
    })
}

/// Solve every station of a field run; stations are independent and run
/// in parallel.
pub fn solve_field(
    fs: &FreestreamConditions,
    shape: &ShockShape,
    n_stations: usize,
    r_max: f64,
    n_streamlines: usize,
) -> Result<Vec<StationSolution>> {
    let stations = shape.sample_stations(n_stations, r_max)?;
    stations
        .into_par_iter()
        .map(|st| solve_station(fs, shape, st, n_streamlines))
        .collect()
}

/// Stagnation body point by Richardson extrapolation from two stations
/// near the axis, where the station integrals degenerate.
pub fn axis_point(fs: &FreestreamConditions, shape: &ShockShape) -> Result<BodyPoint> {
    let eval = |r: f64| -> Result<(f64, f64)> {
        let st = shape.station_by_radius(r)?;
        let mut solver = StationSolver::new(fs, shape, st)?;
        let bp = solver.body_point()?;
        Ok((bp.delta, bp.p_b))
    };
    let (d_h, p_h) = eval(AXIS_OFFSET)?;
    let (d_h2, p_h2) = eval(0.5 * AXIS_OFFSET)?;
    // leading error is quadratic in the station radius
    let delta = (4.0 * d_h2 - d_h) / 3.0;
    let p_b = (4.0 * p_h2 - p_h) / 3.0;
    Ok(BodyPoint {
        z: delta,
        r: 0.0,
        p_b,
        delta,
    })
}

/// Recovered body: the extrapolated stagnation point followed by the
/// `psi = 0` point of every sampled station.
pub fn body_shape(
    fs: &FreestreamConditions,
    shape: &ShockShape,
    n_stations: usize,
    r_max: f64,
) -> Result<Vec<BodyPoint>> {
    let stations = shape.sample_stations(n_stations, r_max)?;
    let mut body = Vec::with_capacity(n_stations + 1);
    body.push(axis_point(fs, shape)?);
    let solved: Result<Vec<BodyPoint>> = stations
        .into_par_iter()
        .map(|st| StationSolver::new(fs, shape, st)?.body_point())
        .collect();
    body.extend(solved?);
    Ok(body)
}

/// Shock radius at which the recovered body just spans the reference
/// body radius: the last body point lands in `[R, R + 1e-3]`.
pub fn find_body_extent(fs: &FreestreamConditions, shape: &ShockShape) -> Result<f64> {
    const BAND: f64 = 1e-3;
    let target = fs.body_radius + 0.5 * BAND;
    let body_r = |r_shock: f64| -> Result<f64> {
        let st = shape.station_by_radius(r_shock)?;
        Ok(StationSolver::new(fs, shape, st)?.body_point()?.r)
    };
    // grow an upper bracket; the body radius is below the shock radius
    // by the normal-projection of the layer thickness
    let mut lo = fs.body_radius;
    let g_lo = body_r(lo)? - target;
    if g_lo.abs() <= 0.5 * BAND {
        return Ok(lo);
    }
    if g_lo > 0.0 {
        return Err(Error::InvalidShape(format!(
            "recovered body already exceeds the reference radius at r_shock = {lo}"
        )));
    }
    let domain_cap = shape.r_domain_max();
    let mut hi = lo;
    let mut step = 0.5 * fs.body_radius;
    let mut g_hi = g_lo;
    for _ in 0..64 {
        hi = (hi + step).min(domain_cap);
        g_hi = body_r(hi)? - target;
        if g_hi >= 0.0 {
            break;
        }
        if hi >= domain_cap {
            return Err(Error::OutOfDomain(format!(
                "shape extent {domain_cap} too short: body never reaches r = {}",
                fs.body_radius
            )));
        }
        step *= 2.0;
        lo = hi;
    }
    if g_hi < 0.0 {
        return Err(Error::InvalidShape(
            "recovered body never spans the reference radius".into(),
        ));
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let g_mid = body_r(mid)? - target;
        if g_mid.abs() <= 0.5 * BAND {
            return Ok(mid);
        }
        if g_mid < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NonConvergence {
        max_panels: 0,
        last_change: hi - lo,
    })
}

/// Pressure and thickness integrals at `(station, psi)` evaluated with a
/// fixed panel count for both integrands. Verification hook for the
/// panel-doubling stability checks; production paths refine adaptively.
pub fn integral_stability(
    fs: &FreestreamConditions,
    shape: &ShockShape,
    station: ShockStation,
    psi: f64,
    panels: usize,
) -> Result<(f64, f64)> {
    let post = post_shock_state(fs, station.beta_hat)?;
    let sin_b = station.beta_hat.sin();
    let sin2_hat = sin_b * sin_b;
    let kr = match fs.j() {
        0 => station.kappa_hat,
        _ => station.kappa_hat / station.r_hat,
    };
    let u_p = pressure_integrand(fs, shape, sin2_hat);
    let p_cum = CumulativeIntegral::build_fixed(&u_p, 0.0, station.psi_hat, panels)?;
    let p = post.p - kr * (p_cum.total() - p_cum.eval_to(&u_p, psi)?);
    let g = thickness_integrand(fs, shape, sin2_hat, post.p, kr, &p_cum, &u_p);
    let g_cum = CumulativeIntegral::build_fixed(&g, 0.0, station.psi_hat, panels)?;
    let y_cap = g_cum.total() - g_cum.eval_to(&g, psi)?;
    Ok((p, y_cap))
}

/// Line integral of the surface pressure along the body polyline
/// (trapezoidal in arc length); independent of point orientation.
pub fn integrated_surface_pressure(body: &[BodyPoint]) -> Result<f64> {
    if body.len() < 2 {
        return Err(Error::DegenerateInput(format!(
            "surface-pressure integral needs at least 2 body points, got {}",
            body.len()
        )));
    }
    let mut acc = 0.0;
    for w in body.windows(2) {
        let dl = ((w[1].z - w[0].z).powi(2) + (w[1].r - w[0].r).powi(2)).sqrt();
        acc += 0.5 * (w[0].p_b + w[1].p_b) * dl;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn fs4() -> FreestreamConditions {
        FreestreamConditions::plane(4.0).unwrap()
    }

    fn table1_m4(fs: &FreestreamConditions) -> ShockShape {
        ShockShape::poly_in_f(fs, 17.615, &[0.998, -0.045]).unwrap()
    }

    #[test]
    fn pressure_at_shock_is_exactly_the_jump_value() {
        let fs = fs4();
        let shape = table1_m4(&fs);
        let station = shape.station_by_radius(0.6).unwrap();
        let p_hat = post_shock_state(&fs, station.beta_hat).unwrap().p;
        assert_eq!(
            pressure_at(&fs, &shape, station, station.psi_hat).unwrap(),
            p_hat
        );
    }

    #[test]
    fn body_pressure_is_strictly_below_jump_value() {
        let fs = fs4();
        let shape = table1_m4(&fs);
        let station = shape.station_by_radius(0.6).unwrap();
        let p_hat = post_shock_state(&fs, station.beta_hat).unwrap().p;
        let p_b = pressure_at(&fs, &shape, station, 0.0).unwrap();
        assert!(p_b < p_hat);
        assert!(p_b > 0.0);
    }

    #[test]
    fn thickness_vanishes_at_the_shock() {
        let fs = fs4();
        let shape = table1_m4(&fs);
        let station = shape.station_by_radius(0.4).unwrap();
        let prof = y_profile(&fs, &shape, station, &[station.psi_hat]).unwrap();
        assert_eq!(prof[0].1, 0.0);
        assert_eq!(prof[0].2, 0.0);
    }

    #[test]
    fn density_at_shock_matches_jump_density() {
        let fs = fs4();
        let shape = table1_m4(&fs);
        let station = shape.station_by_radius(0.5).unwrap();
        let post = post_shock_state(&fs, station.beta_hat).unwrap();
        let rho = density_at(&fs, &station, station.beta_hat, post.p).unwrap();
        assert_relative_eq!(rho, post.rho(), max_relative = 1e-12);
    }

    #[test]
    fn density_reference_and_isentropic_scaling() {
        let fs = fs4();
        let shape = table1_m4(&fs);
        let vertex = shape.station_by_radius(0.0).unwrap();
        let p_hat = post_shock_state(&fs, vertex.beta_hat).unwrap().p;
        let rho = density_at(&fs, &vertex, vertex.beta_hat, p_hat).unwrap();
        assert_abs_diff_eq!(rho, 1.0 / 0.21875, epsilon = 1e-12);

        let rho_half = density_at(&fs, &vertex, vertex.beta_hat, 0.5 * p_hat).unwrap();
        assert_relative_eq!(
            rho_half / rho,
            0.5f64.powf(1.0 / 1.4),
            max_relative = 1e-13
        );
    }

    #[test]
    fn speed_surrogate_reference_values() {
        let fs = fs4();
        let half_pi = std::f64::consts::FRAC_PI_2;
        // at the shock the bracket collapses to the tangential speed
        let beta = 1.1;
        let p_hat = post_shock_state(&fs, beta).unwrap().p;
        assert_abs_diff_eq!(
            u_at(&fs, beta, p_hat, p_hat, beta).unwrap(),
            beta.cos(),
            epsilon = 1e-15
        );
        // stagnation behind the normal shock
        let p0 = post_shock_state(&fs, half_pi).unwrap().p;
        assert_eq!(u_at(&fs, half_pi, p0, p0, half_pi).unwrap(), 0.0);
        // frozen from an independent evaluation of the bracket at
        // beta* = 90 deg, P = 0.9 P_N
        assert_abs_diff_eq!(
            u_at(&fs, half_pi, 0.9 * p0, p0, half_pi).unwrap(),
            0.19728514456124564,
            epsilon = 1e-12
        );
    }

    #[test]
    fn station_solution_is_monotone_and_anchored() {
        let fs = fs4();
        let shape = table1_m4(&fs);
        let station = shape.station_by_radius(0.7).unwrap();
        let sol = solve_station(&fs, &shape, station, 100).unwrap();
        assert_eq!(sol.samples.len(), 100);

        let first = &sol.samples[0];
        let p_hat = post_shock_state(&fs, station.beta_hat).unwrap().p;
        assert_eq!(first.p, p_hat);
        assert_eq!(first.y, 0.0);
        assert_eq!(first.z, station.z_hat);
        assert_eq!(first.r, station.r_hat);

        for w in sol.samples.windows(2) {
            assert!(w[1].p <= w[0].p, "pressure must not increase toward the body");
            assert!(w[1].y > w[0].y, "distance from shock must increase");
            assert!(w[1].rho > 0.0 && w[1].u >= 0.0);
            assert!(w[1].p <= p_hat);
        }
        assert_eq!(sol.samples.last().unwrap().psi, 0.0);
    }

    #[test]
    fn psi_outside_station_range_is_rejected() {
        let fs = fs4();
        let shape = table1_m4(&fs);
        let station = shape.station_by_radius(0.3).unwrap();
        let mut solver = StationSolver::new(&fs, &shape, station).unwrap();
        assert!(matches!(
            solver.pressure(station.psi_hat * 1.5),
            Err(Error::OutOfDomain(_))
        ));
        assert!(matches!(solver.pressure(-0.1), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn surface_pressure_integral_constant_on_quarter_circle() {
        let c = 0.73;
        let n = 2000;
        let body: Vec<BodyPoint> = (0..=n)
            .map(|i| {
                let th = std::f64::consts::FRAC_PI_2 * i as f64 / n as f64;
                BodyPoint {
                    z: 0.5 - 0.5 * th.cos(),
                    r: 0.5 * th.sin(),
                    p_b: c,
                    delta: 0.0,
                }
            })
            .collect();
        let val = integrated_surface_pressure(&body).unwrap();
        assert_relative_eq!(val, c * std::f64::consts::PI / 4.0, max_relative = 1e-5);

        let mut reversed = body.clone();
        reversed.reverse();
        assert_relative_eq!(
            integrated_surface_pressure(&reversed).unwrap(),
            val,
            max_relative = 1e-12
        );
        assert!(matches!(
            integrated_surface_pressure(&body[..1]),
            Err(Error::DegenerateInput(_))
        ));
    }
}
