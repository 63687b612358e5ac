//! Composite Gauss-Legendre quadrature with panel-doubling refinement.
//!
//! All shock-layer integrals go through this module: a fixed 5-node rule
//! per panel, 16 panels to start, doubling until the total changes by
//! less than a relative tolerance. Nodes are interior, so integrands
//! with an integrable endpoint steepening (the `1/u` behavior of the
//! layer-thickness integrand near the axis) are never evaluated at the
//! endpoint itself.

use crate::error::{Error, Result};

/// Nodes and weights of the 5-point Gauss-Legendre rule on [-1, 1].
const GL5: [(f64, f64); 5] = [
    (-0.906179845938664, 0.23692688505618908),
    (-0.5384693101056831, 0.47862867049936647),
    (0.0, 0.5688888888888889),
    (0.5384693101056831, 0.47862867049936647),
    (0.906179845938664, 0.23692688505618908),
];

/// 3-point rule used for the partial panel of a cumulative evaluation.
const GL3: [(f64, f64); 3] = [
    (-0.7745966692414834, 0.5555555555555556),
    (0.0, 0.8888888888888888),
    (0.7745966692414834, 0.5555555555555556),
];

/// Panels in the first refinement pass.
pub const INITIAL_PANELS: usize = 16;
/// Refinement cap; exceeding it is a [`Error::NonConvergence`].
pub const MAX_PANELS: usize = 1 << 10;
/// Relative change between successive doublings accepted as converged.
pub const REL_TOL: f64 = 1e-8;
/// Absolute floor so that near-zero integrals converge.
const ABS_FLOOR: f64 = 1e-16;

fn rule_sum<F>(f: &F, a: f64, b: f64, rule: &[(f64, f64)]) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for &(x, w) in rule {
        acc += w * f(mid + half * x)?;
    }
    Ok(acc * half)
}

fn composite_pass<F>(f: &F, a: f64, b: f64, panels: usize, sums: &mut Vec<f64>) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let h = (b - a) / panels as f64;
    sums.clear();
    sums.reserve(panels);
    let mut total = 0.0;
    for i in 0..panels {
        let lo = a + i as f64 * h;
        let hi = if i + 1 == panels { b } else { lo + h };
        let s = rule_sum(f, lo, hi, &GL5)?;
        sums.push(s);
        total += s;
    }
    Ok(total)
}

/// `\int_a^b f` by panel doubling. Returns the converged value.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    let mut sums = Vec::new();
    let mut prev = composite_pass(&f, a, b, INITIAL_PANELS, &mut sums)?;
    let mut panels = INITIAL_PANELS;
    while panels < MAX_PANELS {
        panels *= 2;
        let next = composite_pass(&f, a, b, panels, &mut sums)?;
        let change = (next - prev).abs();
        if change <= REL_TOL * next.abs() + ABS_FLOOR {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NonConvergence {
        max_panels: MAX_PANELS,
        last_change: f64::NAN,
    })
}

/// `\int_a^b f` with a fixed panel count (no refinement). Used by the
/// stability checks that compare `N` against `2N` panels directly.
pub fn integrate_fixed<F>(f: F, a: f64, b: f64, panels: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    let mut sums = Vec::new();
    composite_pass(&f, a, b, panels, &mut sums)
}

/// A converged panel decomposition of `\int_a^x f` that supports cheap
/// evaluation at arbitrary `x` in `[a, b]`.
///
/// Built once per shock station: the prefix sums hold every complete
/// panel, and a query adds a short Gauss rule over the partial panel.
/// The nested layer-thickness integrand looks its pressure values up
/// through this structure instead of re-integrating from scratch.
#[derive(Debug, Clone)]
pub struct CumulativeIntegral {
    a: f64,
    b: f64,
    h: f64,
    /// `prefix[i]` is the integral over the first `i` panels.
    prefix: Vec<f64>,
}

impl CumulativeIntegral {
    /// Build with a fixed panel count, no refinement. Verification hook
    /// for stability checks that compare `N` against `2N` panels.
    pub fn build_fixed<F>(f: &F, a: f64, b: f64, panels: usize) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64>,
    {
        if a == b {
            return Ok(Self {
                a,
                b,
                h: 0.0,
                prefix: vec![0.0],
            });
        }
        let mut sums = Vec::new();
        composite_pass(f, a, b, panels, &mut sums)?;
        let mut prefix = Vec::with_capacity(panels + 1);
        let mut acc = 0.0;
        prefix.push(0.0);
        for s in &sums {
            acc += s;
            prefix.push(acc);
        }
        Ok(Self {
            a,
            b,
            h: (b - a) / panels as f64,
            prefix,
        })
    }

    /// Build by panel doubling until the total converges.
    pub fn build<F>(f: &F, a: f64, b: f64) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64>,
    {
        if b < a {
            return Err(Error::DegenerateInput(format!(
                "integration bounds reversed: [{a}, {b}]"
            )));
        }
        if a == b {
            return Ok(Self {
                a,
                b,
                h: 0.0,
                prefix: vec![0.0],
            });
        }
        let mut sums = Vec::new();
        let mut prev = composite_pass(f, a, b, INITIAL_PANELS, &mut sums)?;
        let mut panels = INITIAL_PANELS;
        let mut last_change = f64::INFINITY;
        while panels < MAX_PANELS {
            panels *= 2;
            let next = composite_pass(f, a, b, panels, &mut sums)?;
            last_change = (next - prev).abs();
            if last_change <= REL_TOL * next.abs() + ABS_FLOOR {
                let mut prefix = Vec::with_capacity(panels + 1);
                let mut acc = 0.0;
                prefix.push(0.0);
                for s in &sums {
                    acc += s;
                    prefix.push(acc);
                }
                return Ok(Self {
                    a,
                    b,
                    h: (b - a) / panels as f64,
                    prefix,
                });
            }
            prev = next;
        }
        Err(Error::NonConvergence {
            max_panels: MAX_PANELS,
            last_change,
        })
    }

    /// Total `\int_a^b f`.
    pub fn total(&self) -> f64 {
        *self.prefix.last().unwrap()
    }

    /// `\int_a^x f`, evaluating `f` only over the partial panel containing `x`.
    pub fn eval_to<F>(&self, f: &F, x: f64) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64>,
    {
        if x <= self.a {
            return Ok(0.0);
        }
        if x >= self.b || self.h == 0.0 {
            return Ok(self.total());
        }
        let panels = self.prefix.len() - 1;
        let idx = (((x - self.a) / self.h) as usize).min(panels - 1);
        let lo = self.a + idx as f64 * self.h;
        Ok(self.prefix[idx] + rule_sum(f, lo, x, &GL3)?)
    }
}
