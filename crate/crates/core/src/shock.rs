//! Parameterized bow-shock shapes and their differential geometry.
//!
//! Three families are supported:
//!
//! * a hyperbola asymptotic to the free-stream Mach lines,
//!   `beta_m r = sqrt((z + z0)^2 - z0^2)` with `beta_m = sqrt(M^2 - 1)`;
//! * a polynomial `r = c1 f + c2 f^2 + ...` (degree <= 4) in the
//!   hyperbola coordinate `f = sqrt((z + z0)^2 - z0^2) / beta_m`;
//! * a cubic spline through digitized shock points.
//!
//! Every family has its vertex at the origin, is normal to the axis
//! there, and bends monotonically toward the Mach angle. Queries are
//! expressed through stations: shock points carrying position, angle,
//! curvature and the local stream-function value.

use crate::error::{Error, Result};
use crate::gas::FreestreamConditions;
use crate::spline::NaturalCubicSpline;

/// Radial offset of the first sampled station from the axis. The exact
/// axis is a removable degeneracy handled by extrapolation in the layer
/// solver.
pub const AXIS_OFFSET: f64 = 1e-3;

/// Relative tolerance of the monotone root solves (`z` from `r` and
/// stream-function inversions).
const ROOT_TOL: f64 = 1e-12;

/// One point on the shock: position, inclination, curvature and the
/// normalized stream function swallowed between it and the axis.
#[derive(Debug, Clone, Copy)]
pub struct ShockStation {
    pub z_hat: f64,
    pub r_hat: f64,
    /// Shock angle from the free-stream direction, radians; `pi/2` at
    /// the vertex, decreasing outboard.
    pub beta_hat: f64,
    /// Curvature, positive with the shock concave toward the body.
    pub kappa_hat: f64,
    /// `r^(1+j) / (1+j)`.
    pub psi_hat: f64,
}

#[derive(Debug, Clone)]
enum Family {
    Moeckel {
        z0: f64,
    },
    PolyInF {
        z0: f64,
        coeffs: Vec<f64>,
    },
    /// Axial coordinate as a natural cubic spline in `s = r^2`, which
    /// keeps the vertex normal to the axis representable.
    Spline {
        z_of_s: NaturalCubicSpline,
    },
}

/// A bow-shock shape bound to the run conditions (Mach number for the
/// hyperbola slope, symmetry for the stream function).
#[derive(Debug, Clone)]
pub struct ShockShape {
    family: Family,
    beta_m: f64,
    j: u32,
}

/// Local derivatives of the shock curve under its parameterization.
struct CurvePoint {
    z: f64,
    r: f64,
    dz: f64,
    dr: f64,
    d2z: f64,
    d2r: f64,
}

impl ShockShape {
    /// Hyperbolic shock with vertex parameter `z0`.
    pub fn moeckel(fs: &FreestreamConditions, z0: f64) -> Result<Self> {
        if !(z0 > 0.0) || !z0.is_finite() {
            return Err(Error::InvalidShape(format!("z0 must be > 0, got {z0}")));
        }
        Ok(Self {
            family: Family::Moeckel { z0 },
            beta_m: fs.beta_m(),
            j: fs.j(),
        })
    }

    /// Polynomial-in-`f` shock `r = sum c_k f^k`, `1 <= degree <= 4`.
    pub fn poly_in_f(fs: &FreestreamConditions, z0: f64, coeffs: &[f64]) -> Result<Self> {
        if !(z0 > 0.0) || !z0.is_finite() {
            return Err(Error::InvalidShape(format!("z0 must be > 0, got {z0}")));
        }
        if coeffs.is_empty() || coeffs.len() > 4 {
            return Err(Error::InvalidShape(format!(
                "polynomial degree must be 1..=4, got {}",
                coeffs.len()
            )));
        }
        if !(coeffs[0] > 0.0) || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidShape(format!(
                "leading coefficient must be > 0 and all coefficients finite, got {coeffs:?}"
            )));
        }
        Ok(Self {
            family: Family::PolyInF {
                z0,
                coeffs: coeffs.to_vec(),
            },
            beta_m: fs.beta_m(),
            j: fs.j(),
        })
    }

    /// Cubic-spline shock through digitized `(z, r)` points.
    ///
    /// The points are translated so the first one sits at the origin;
    /// they must be strictly increasing in both coordinates. The spline
    /// stores `z` against `s = r^2` with natural end conditions, which
    /// makes the vertex exactly normal to the axis.
    pub fn fit_spline(fs: &FreestreamConditions, points: &[(f64, f64)]) -> Result<Self> {
        if points.len() < 4 {
            return Err(Error::DegenerateInput(format!(
                "spline shock needs at least 4 points, got {}",
                points.len()
            )));
        }
        let (z0p, r0p) = points[0];
        let mut s = Vec::with_capacity(points.len());
        let mut z = Vec::with_capacity(points.len());
        let mut prev_r = f64::NEG_INFINITY;
        for (i, &(zp, rp)) in points.iter().enumerate() {
            let zt = zp - z0p;
            let rt = rp - r0p;
            if i > 0 {
                if zt <= z[i - 1] {
                    return Err(Error::DegenerateInput(format!(
                        "shock points must strictly increase in z (row {i})"
                    )));
                }
                if rt <= prev_r {
                    return Err(Error::DegenerateInput(format!(
                        "shock points must strictly increase in r (row {i})"
                    )));
                }
            }
            prev_r = rt;
            z.push(zt);
            s.push(rt * rt);
        }
        let z_of_s = NaturalCubicSpline::new(s, z)?;
        Ok(Self {
            family: Family::Spline { z_of_s },
            beta_m: fs.beta_m(),
            j: fs.j(),
        })
    }

    /// `(z0, coefficients)` for the analytic families.
    pub fn parameters(&self) -> Option<(f64, &[f64])> {
        match &self.family {
            Family::Moeckel { z0 } => Some((*z0, &[])),
            Family::PolyInF { z0, coeffs } => Some((*z0, coeffs)),
            Family::Spline { .. } => None,
        }
    }

    /// Largest radius the shape can be queried at (`inf` for the
    /// analytic families, the last knot for splines).
    pub fn r_domain_max(&self) -> f64 {
        match &self.family {
            Family::Moeckel { .. } | Family::PolyInF { .. } => f64::INFINITY,
            Family::Spline { z_of_s } => z_of_s.x_max().sqrt(),
        }
    }

    fn z_domain_max(&self) -> Result<f64> {
        match &self.family {
            Family::Moeckel { .. } | Family::PolyInF { .. } => Ok(f64::INFINITY),
            Family::Spline { z_of_s } => z_of_s.value(z_of_s.x_max()),
        }
    }

    /// `f` and its derivative machinery for the hyperbola coordinate.
    fn z_of_f(&self, z0: f64, f: f64) -> f64 {
        let b2 = self.beta_m * self.beta_m;
        // stable at small f: avoids sqrt cancellation
        b2 * f * f / ((b2 * f * f + z0 * z0).sqrt() + z0)
    }

    fn f_of_z(&self, z0: f64, z: f64) -> f64 {
        (z * (z + 2.0 * z0)).sqrt() / self.beta_m
    }

    fn curve_at_f(&self, z0: f64, coeffs: &[f64], f: f64) -> CurvePoint {
        let b2 = self.beta_m * self.beta_m;
        let s = (b2 * f * f + z0 * z0).sqrt();
        let z = self.z_of_f(z0, f);
        let dz = b2 * f / s;
        let d2z = b2 * z0 * z0 / (s * s * s);
        let (r, dr, d2r) = if coeffs.is_empty() {
            (f, 1.0, 0.0)
        } else {
            let mut r = 0.0;
            let mut dr = 0.0;
            let mut d2r = 0.0;
            for &c in coeffs.iter().rev() {
                d2r = d2r * f + 2.0 * dr;
                dr = dr * f + r;
                r = r * f + c;
            }
            // Horner above evaluates sum c_k f^(k-1); multiply back one f
            let value = r * f;
            let deriv = dr * f + r;
            let second = d2r * f + 2.0 * dr;
            (value, deriv, second)
        };
        CurvePoint {
            z,
            r,
            dz,
            dr,
            d2z,
            d2r,
        }
    }

    fn curve_at_spline_r(&self, z_of_s: &NaturalCubicSpline, r: f64) -> Result<CurvePoint> {
        let s = r * r;
        let z = z_of_s.value(s)?;
        let w1 = z_of_s.derivative(s)?;
        let w2 = z_of_s.second_derivative(s)?;
        Ok(CurvePoint {
            z,
            r,
            dz: 2.0 * r * w1,
            dr: 1.0,
            d2z: 2.0 * w1 + 4.0 * r * r * w2,
            d2r: 0.0,
        })
    }

    fn station_from_curve(&self, p: CurvePoint) -> Result<ShockStation> {
        if !(p.dr > 0.0) || p.dz < 0.0 {
            return Err(Error::InvalidShape(format!(
                "shock not monotone at (z, r) = ({:.6}, {:.6})",
                p.z, p.r
            )));
        }
        let beta_hat = p.dr.atan2(p.dz);
        let speed2 = p.dz * p.dz + p.dr * p.dr;
        let kappa_hat = (p.dz * p.d2r - p.dr * p.d2z).abs() / speed2.powf(1.5);
        let jp = self.j as f64 + 1.0;
        Ok(ShockStation {
            z_hat: p.z,
            r_hat: p.r,
            beta_hat,
            kappa_hat,
            psi_hat: p.r.powi(self.j as i32 + 1) / jp,
        })
    }

    /// Shock radius at axial position `z`.
    pub fn radius_at(&self, z: f64) -> Result<f64> {
        if z < 0.0 {
            return Err(Error::OutOfDomain(format!("z = {z} < 0")));
        }
        match &self.family {
            Family::Moeckel { z0 } => Ok(self.f_of_z(*z0, z)),
            Family::PolyInF { z0, coeffs } => {
                let f = self.f_of_z(*z0, z);
                Ok(coeffs.iter().rev().fold(0.0, |acc, &c| acc * f + c) * f)
            }
            Family::Spline { z_of_s } => {
                let z_max = self.z_domain_max()?;
                if z > z_max * (1.0 + 1e-12) {
                    return Err(Error::OutOfDomain(format!(
                        "z = {z} beyond spline extent {z_max}"
                    )));
                }
                // invert the monotone spline z(s)
                let s = invert_monotone(
                    |s| z_of_s.value(s),
                    z.min(z_max),
                    0.0,
                    z_of_s.x_max(),
                )?;
                Ok(s.sqrt())
            }
        }
    }

    /// Full station (position, angle, curvature, stream function) at `z`.
    pub fn station_at(&self, z: f64) -> Result<ShockStation> {
        if z < 0.0 {
            return Err(Error::OutOfDomain(format!("z = {z} < 0")));
        }
        match &self.family {
            Family::Moeckel { z0 } => {
                let f = self.f_of_z(*z0, z);
                self.station_from_curve(self.curve_at_f(*z0, &[], f))
            }
            Family::PolyInF { z0, coeffs } => {
                let f = self.f_of_z(*z0, z);
                self.station_from_curve(self.curve_at_f(*z0, coeffs, f))
            }
            Family::Spline { z_of_s } => {
                let r = self.radius_at(z)?;
                self.station_from_curve(self.curve_at_spline_r(z_of_s, r)?)
            }
        }
    }

    /// Station at the given shock radius.
    pub fn station_by_radius(&self, r: f64) -> Result<ShockStation> {
        if r < 0.0 {
            return Err(Error::OutOfDomain(format!("r = {r} < 0")));
        }
        match &self.family {
            Family::Moeckel { z0 } => self.station_from_curve(self.curve_at_f(*z0, &[], r)),
            Family::PolyInF { z0, coeffs } => {
                let f = if r == 0.0 {
                    0.0
                } else {
                    invert_monotone(
                        |f| Ok(coeffs.iter().rev().fold(0.0, |acc, &c| acc * f + c) * f),
                        r,
                        0.0,
                        poly_upper_bracket(coeffs, r)?,
                    )?
                };
                self.station_from_curve(self.curve_at_f(*z0, coeffs, f))
            }
            Family::Spline { z_of_s } => {
                if r > self.r_domain_max() * (1.0 + 1e-12) {
                    return Err(Error::OutOfDomain(format!(
                        "r = {r} beyond spline extent {}",
                        self.r_domain_max()
                    )));
                }
                self.station_from_curve(self.curve_at_spline_r(z_of_s, r.min(self.r_domain_max()))?)
            }
        }
    }

    /// Station where the streamline of normalized stream function `psi`
    /// crossed the shock: `r* = ((1+j) psi)^(1/(1+j))`.
    pub fn locate_s(&self, psi: f64) -> Result<ShockStation> {
        if psi < 0.0 {
            return Err(Error::OutOfDomain(format!("psi = {psi} < 0")));
        }
        let jp = self.j as f64 + 1.0;
        let r_star = match self.j {
            0 => psi,
            _ => (jp * psi).powf(1.0 / jp),
        };
        if r_star > self.r_domain_max() * (1.0 + 1e-12) {
            return Err(Error::OutOfDomain(format!(
                "psi = {psi} beyond the sampled shock extent"
            )));
        }
        self.station_by_radius(r_star)
    }

    /// `n` stations with radii uniform on `[AXIS_OFFSET, r_max]`,
    /// validated to have strictly decreasing shock angle.
    pub fn sample_stations(&self, n: usize, r_max: f64) -> Result<Vec<ShockStation>> {
        if n < 2 {
            return Err(Error::DegenerateInput(format!(
                "station sampling needs n >= 2, got {n}"
            )));
        }
        if !(r_max > AXIS_OFFSET) {
            return Err(Error::DegenerateInput(format!(
                "r_max = {r_max} must exceed the axis offset {AXIS_OFFSET}"
            )));
        }
        let mut stations: Vec<ShockStation> = Vec::with_capacity(n);
        for i in 0..n {
            let r = AXIS_OFFSET + (r_max - AXIS_OFFSET) * i as f64 / (n - 1) as f64;
            let st = self.station_by_radius(r)?;
            if let Some(prev) = stations.last() {
                if st.beta_hat >= prev.beta_hat {
                    return Err(Error::InvalidShape(format!(
                        "shock angle not strictly decreasing at r = {r:.6}"
                    )));
                }
            }
            stations.push(st);
        }
        Ok(stations)
    }
}

/// Grow an upper bracket for the polynomial inversion `poly(f) = r`.
fn poly_upper_bracket(coeffs: &[f64], r: f64) -> Result<f64> {
    let eval = |f: f64| coeffs.iter().rev().fold(0.0, |acc, &c| acc * f + c) * f;
    let mut hi = r / coeffs[0].max(f64::MIN_POSITIVE);
    for _ in 0..200 {
        if eval(hi) >= r {
            return Ok(hi);
        }
        hi *= 2.0;
        if !hi.is_finite() {
            break;
        }
    }
    Err(Error::InvalidShape(format!(
        "polynomial shock never reaches r = {r}"
    )))
}

/// Solve `g(x) = target` for monotonically increasing `g` on `[lo, hi]`
/// to relative tolerance `ROOT_TOL`. Secant proposals alternate with
/// bisection so the bracket always shrinks.
fn invert_monotone<G>(g: G, target: f64, mut lo: f64, mut hi: f64) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    let mut g_lo = g(lo)? - target;
    if g_lo >= 0.0 {
        return Ok(lo);
    }
    let mut g_hi = g(hi)? - target;
    if g_hi < 0.0 {
        return Err(Error::OutOfDomain(format!(
            "target {target} outside monotone range [{lo}, {hi}]"
        )));
    }
    for iter in 0..200 {
        let mut x = if iter % 2 == 0 && g_hi != g_lo {
            hi - g_hi * (hi - lo) / (g_hi - g_lo)
        } else {
            0.5 * (lo + hi)
        };
        if !(x > lo) || !(x < hi) {
            x = 0.5 * (lo + hi);
        }
        let gx = g(x)? - target;
        if gx == 0.0 {
            return Ok(x);
        }
        if gx < 0.0 {
            lo = x;
            g_lo = gx;
        } else {
            hi = x;
            g_hi = gx;
        }
        if hi - lo <= ROOT_TOL * hi.abs().max(1e-30) {
            return Ok(0.5 * (lo + hi));
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn fs4() -> FreestreamConditions {
        FreestreamConditions::plane(4.0).unwrap()
    }

    fn table1_m4(fs: &FreestreamConditions) -> ShockShape {
        ShockShape::poly_in_f(fs, 17.615, &[0.998, -0.045]).unwrap()
    }

    #[test]
    fn moeckel_radius_reference_values() {
        let shape = ShockShape::moeckel(&fs4(), 17.615).unwrap();
        assert_eq!(shape.radius_at(0.0).unwrap(), 0.0);
        // frozen from exact evaluation: sqrt(36.23 / 15)
        assert_abs_diff_eq!(
            shape.radius_at(1.0).unwrap(),
            1.5541342713335078,
            epsilon = 1e-12
        );
    }

    #[test]
    fn poly_radius_matches_f_expansion() {
        let fs = fs4();
        let shape = table1_m4(&fs);
        let moeckel = ShockShape::moeckel(&fs, 17.615).unwrap();
        let f = moeckel.radius_at(1.0).unwrap();
        assert_relative_eq!(
            shape.radius_at(1.0).unwrap(),
            0.998 * f - 0.045 * f * f,
            max_relative = 1e-13
        );
    }

    #[test]
    fn vertex_station_is_normal_with_hyperbola_curvature() {
        let shape = ShockShape::moeckel(&fs4(), 17.615).unwrap();
        let st = shape.station_at(0.0).unwrap();
        assert_eq!(st.beta_hat, std::f64::consts::FRAC_PI_2);
        // beta_m^2 / z0 = 15 / 17.615
        assert_abs_diff_eq!(st.kappa_hat, 0.8515469770082316, epsilon = 1e-12);
        assert_eq!(st.psi_hat, 0.0);
    }

    #[test]
    fn far_field_angle_approaches_mach_angle() {
        let fs = fs4();
        let shape = ShockShape::moeckel(&fs, 17.615).unwrap();
        let st = shape.station_at(1e7).unwrap();
        assert_abs_diff_eq!(st.beta_hat, (0.25f64).asin(), epsilon = 1e-6);
        assert_abs_diff_eq!((0.25f64).asin().to_degrees(), 14.4775, epsilon = 1e-4);
    }

    #[test]
    fn station_by_radius_round_trips_with_station_at() {
        let fs = fs4();
        for shape in [ShockShape::moeckel(&fs, 17.615).unwrap(), table1_m4(&fs)] {
            for r in [1e-3, 0.1, 0.7, 1.4] {
                let st = shape.station_by_radius(r).unwrap();
                assert_relative_eq!(st.r_hat, r, max_relative = 1e-11);
                let st2 = shape.station_at(st.z_hat).unwrap();
                assert_relative_eq!(st2.r_hat, r, max_relative = 1e-10);
                assert_relative_eq!(st2.beta_hat, st.beta_hat, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn locate_s_plane_and_axisymmetric() {
        let fs = fs4();
        let shape = table1_m4(&fs);
        let st = shape.locate_s(0.3).unwrap();
        assert_relative_eq!(st.r_hat, 0.3, max_relative = 1e-12);

        let fsa = FreestreamConditions::axisymmetric(4.0).unwrap();
        let shape_a = ShockShape::moeckel(&fsa, 17.615).unwrap();
        let st = shape_a.locate_s(0.5).unwrap();
        assert_relative_eq!(st.r_hat, 1.0, max_relative = 1e-12);

        let vertex = shape_a.locate_s(0.0).unwrap();
        assert_eq!(vertex.beta_hat, std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn sampled_stations_have_decreasing_angle_and_increasing_psi() {
        let fs = fs4();
        let shape = table1_m4(&fs);
        let stations = shape.sample_stations(200, 1.2).unwrap();
        assert_eq!(stations.len(), 200);
        assert_abs_diff_eq!(stations[0].r_hat, AXIS_OFFSET, epsilon = 1e-15);
        assert_abs_diff_eq!(stations[199].r_hat, 1.2, epsilon = 1e-12);
        for w in stations.windows(2) {
            assert!(w[1].beta_hat < w[0].beta_hat);
            assert!(w[1].psi_hat > w[0].psi_hat);
            assert!(w[1].z_hat > w[0].z_hat);
        }
    }

    #[test]
    fn spline_fit_reproduces_moeckel() {
        let fs = fs4();
        let moeckel = ShockShape::moeckel(&fs, 17.615).unwrap();
        let n = 50;
        let points: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let r = i as f64 / (n - 1) as f64;
                let st = moeckel.station_by_radius(r).unwrap();
                (st.z_hat, st.r_hat)
            })
            .collect();
        let spline = ShockShape::fit_spline(&fs, &points).unwrap();

        // interpolation: radius at the knots to 1e-6
        for &(z, r) in &points[1..] {
            assert_abs_diff_eq!(spline.radius_at(z).unwrap(), r, epsilon = 1e-6);
        }
        // vertex normal to the axis
        let st0 = spline.station_by_radius(0.0).unwrap();
        assert_eq!(st0.beta_hat, std::f64::consts::FRAC_PI_2);

        // curvature within 1% at interior knots
        for &(_, r) in &points[3..n - 3] {
            let exact = moeckel.station_by_radius(r).unwrap().kappa_hat;
            let fitted = spline.station_by_radius(r).unwrap().kappa_hat;
            assert!(
                (fitted - exact).abs() <= 0.01 * exact,
                "curvature off by {:.3}% at r = {r}",
                100.0 * (fitted - exact).abs() / exact
            );
        }
    }

    #[test]
    fn spline_rejects_bad_point_sets() {
        let fs = fs4();
        let three = [(0.0, 0.0), (0.1, 0.3), (0.4, 0.7)];
        assert!(matches!(
            ShockShape::fit_spline(&fs, &three),
            Err(Error::DegenerateInput(_))
        ));
        let repeated = [(0.0, 0.0), (0.1, 0.3), (0.1, 0.5), (0.4, 0.7)];
        assert!(matches!(
            ShockShape::fit_spline(&fs, &repeated),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn spline_extrapolation_is_out_of_domain() {
        let fs = fs4();
        let moeckel = ShockShape::moeckel(&fs, 17.615).unwrap();
        let points: Vec<(f64, f64)> = (0..10)
            .map(|i| {
                let r = i as f64 / 9.0;
                let st = moeckel.station_by_radius(r).unwrap();
                (st.z_hat, st.r_hat)
            })
            .collect();
        let spline = ShockShape::fit_spline(&fs, &points).unwrap();
        assert!(matches!(
            spline.radius_at(10.0),
            Err(Error::OutOfDomain(_))
        ));
        assert!(matches!(
            spline.station_by_radius(1.5),
            Err(Error::OutOfDomain(_))
        ));
    }

    proptest! {
        /// psi -> station -> psi round trip.
        #[test]
        fn stream_function_round_trip(psi in 1e-6f64..0.5, axisym in proptest::bool::ANY) {
            let fs = if axisym {
                FreestreamConditions::axisymmetric(4.0).unwrap()
            } else {
                fs4()
            };
            let shape = ShockShape::poly_in_f(&fs, 17.615, &[0.998, -0.045]).unwrap();
            let st = shape.locate_s(psi).unwrap();
            prop_assert!((st.psi_hat - psi).abs() <= 1e-10 * psi.max(1e-3));
        }

        /// The shock angle decreases monotonically for the analytic families.
        #[test]
        fn angle_decreases_along_analytic_shapes(
            z0 in 5.0f64..80.0,
            b in -0.08f64..0.0,
            r1 in 1e-3f64..2.0,
            dr in 1e-4f64..0.5,
        ) {
            let fs = fs4();
            let shape = ShockShape::poly_in_f(&fs, z0, &[0.998, b]).unwrap();
            let s1 = shape.station_by_radius(r1).unwrap();
            let s2 = shape.station_by_radius(r1 + dr).unwrap();
            prop_assert!(s2.beta_hat < s1.beta_hat);
        }
    }
}
