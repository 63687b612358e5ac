//! Natural cubic spline interpolation with first and second derivatives.

use crate::error::{Error, Result};

/// Natural cubic spline through strictly increasing abscissae.
///
/// Second derivatives vanish at both ends. Queries outside the knot
/// range are an error rather than an extrapolation.
#[derive(Debug, Clone)]
pub struct NaturalCubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// Second derivative of the spline at each knot.
    m: Vec<f64>,
}

impl NaturalCubicSpline {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::DegenerateInput(format!(
                "abscissa/ordinate length mismatch: {} vs {}",
                xs.len(),
                ys.len()
            )));
        }
        if xs.len() < 2 {
            return Err(Error::DegenerateInput(
                "spline needs at least 2 points".into(),
            ));
        }
        for w in xs.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::DegenerateInput(format!(
                    "abscissae not strictly increasing near x = {}",
                    w[0]
                )));
            }
        }
        if xs.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
            return Err(Error::DegenerateInput("non-finite spline data".into()));
        }

        let n = xs.len();
        let mut m = vec![0.0; n];
        if n > 2 {
            // Thomas solve of the tridiagonal system for interior second
            // derivatives; natural conditions pin the ends to zero.
            let mut sub = vec![0.0; n];
            let mut diag = vec![0.0; n];
            let mut sup = vec![0.0; n];
            let mut rhs = vec![0.0; n];
            for i in 1..n - 1 {
                let h0 = xs[i] - xs[i - 1];
                let h1 = xs[i + 1] - xs[i];
                sub[i] = h0;
                diag[i] = 2.0 * (h0 + h1);
                sup[i] = h1;
                rhs[i] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
            }
            for i in 2..n - 1 {
                let w = sub[i] / diag[i - 1];
                diag[i] -= w * sup[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            m[n - 2] = rhs[n - 2] / diag[n - 2];
            for i in (1..n - 2).rev() {
                m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
            }
        }
        Ok(Self { xs, ys, m })
    }

    pub fn x_min(&self) -> f64 {
        self.xs[0]
    }

    pub fn x_max(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    pub fn knots(&self) -> &[f64] {
        &self.xs
    }

    fn segment(&self, x: f64) -> Result<usize> {
        // allow a sliver of roundoff slack at the ends
        let span = self.x_max() - self.x_min();
        let slack = 1e-12 * span.max(1.0);
        if x < self.x_min() - slack || x > self.x_max() + slack {
            return Err(Error::OutOfDomain(format!(
                "spline query x = {x} outside [{}, {}]",
                self.x_min(),
                self.x_max()
            )));
        }
        let i = self.xs.partition_point(|&k| k <= x);
        Ok(i.clamp(1, self.xs.len() - 1) - 1)
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        let i = self.segment(x)?;
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - x) / h;
        let b = (x - self.xs[i]) / h;
        Ok(a * self.ys[i]
            + b * self.ys[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0)
    }

    pub fn derivative(&self, x: f64) -> Result<f64> {
        let i = self.segment(x)?;
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - x) / h;
        let b = (x - self.xs[i]) / h;
        Ok((self.ys[i + 1] - self.ys[i]) / h
            - (3.0 * a * a - 1.0) * h * self.m[i] / 6.0
            + (3.0 * b * b - 1.0) * h * self.m[i + 1] / 6.0)
    }

    pub fn second_derivative(&self, x: f64) -> Result<f64> {
        let i = self.segment(x)?;
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - x) / h;
        let b = (x - self.xs[i]) / h;
        Ok(a * self.m[i] + b * self.m[i + 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn interpolates_knots_exactly() {
        let xs = vec![0.0, 0.5, 1.3, 2.0, 3.1];
        let ys: Vec<f64> = xs.iter().map(|x| (1.7f64 * x).sin()).collect();
        let s = NaturalCubicSpline::new(xs.clone(), ys.clone()).unwrap();
        for (x, y) in xs.iter().zip(&ys) {
            assert_abs_diff_eq!(s.value(*x).unwrap(), *y, epsilon = 1e-14);
        }
    }

    #[test]
    fn reproduces_linear_functions() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64 * 0.37).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 - 3.0 * x).collect();
        let s = NaturalCubicSpline::new(xs, ys).unwrap();
        for i in 0..=100 {
            let x = 3.33 * i as f64 / 100.0;
            assert_abs_diff_eq!(s.value(x).unwrap(), 2.0 - 3.0 * x, epsilon = 1e-12);
            assert_abs_diff_eq!(s.derivative(x).unwrap(), -3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn converges_on_smooth_function_interior() {
        let n = 60;
        let xs: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| (2.0 * x).exp()).collect();
        let s = NaturalCubicSpline::new(xs, ys).unwrap();
        // away from the natural ends the error is fourth order in the
        // spacing; derivatives are third order
        for i in 20..40 {
            let x = (i as f64 + 0.5) / (n - 1) as f64;
            assert_abs_diff_eq!(s.value(x).unwrap(), (2.0 * x).exp(), epsilon = 1e-6);
            assert_abs_diff_eq!(
                s.derivative(x).unwrap(),
                2.0 * (2.0 * x).exp(),
                epsilon = 1e-4
            );
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            NaturalCubicSpline::new(vec![0.0, 0.0, 1.0], vec![0.0, 1.0, 2.0]),
            Err(Error::DegenerateInput(_))
        ));
        assert!(matches!(
            NaturalCubicSpline::new(vec![0.0], vec![0.0]),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn rejects_out_of_domain_queries() {
        let s = NaturalCubicSpline::new(vec![0.0, 1.0, 2.0, 3.0], vec![0.0, 1.0, 0.0, 1.0]).unwrap();
        assert!(matches!(s.value(-0.1), Err(Error::OutOfDomain(_))));
        assert!(matches!(s.value(3.5), Err(Error::OutOfDomain(_))));
    }
}
