use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// Strictly convex edge cost with a closed-form inverse derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeCost {
    /// `eˣ + e⁻ˣ`.
    Exp,
    /// `½x²`.
    Quadratic,
}

impl EdgeCost {
    pub fn value(self, x: f64) -> f64 {
        match self {
            EdgeCost::Exp => libm::exp(x) + libm::exp(-x),
            EdgeCost::Quadratic => 0.5 * x * x,
        }
    }

    pub fn derivative(self, x: f64) -> f64 {
        match self {
            EdgeCost::Exp => 2.0 * libm::sinh(x),
            EdgeCost::Quadratic => x,
        }
    }

    pub fn curvature(self, x: f64) -> f64 {
        match self {
            EdgeCost::Exp => 2.0 * libm::cosh(x),
            EdgeCost::Quadratic => 1.0,
        }
    }

    /// The flow whose marginal cost is `y`.
    pub fn inverse_derivative(self, y: f64) -> f64 {
        match self {
            EdgeCost::Exp => libm::asinh(0.5 * y),
            EdgeCost::Quadratic => y,
        }
    }

    /// Convex conjugate `sup_x (y·x − Φ(x))`.
    pub fn conjugate(self, y: f64) -> f64 {
        match self {
            EdgeCost::Exp => y * libm::asinh(0.5 * y) - libm::sqrt(y * y + 4.0),
            EdgeCost::Quadratic => 0.5 * y * y,
        }
    }

    /// `(min, max)` of the curvature over `[−flow_box, flow_box]`.
    pub fn curvature_bounds(self, flow_box: f64) -> (f64, f64) {
        match self {
            EdgeCost::Exp => (2.0, 2.0 * libm::cosh(flow_box)),
            EdgeCost::Quadratic => (1.0, 1.0),
        }
    }

    /// Lipschitz constant of `1/Φ̈`.
    pub fn delta(self) -> f64 {
        match self {
            // max |sinh x| / (2 cosh² x) is attained at sinh x = 1.
            EdgeCost::Exp => 0.25,
            EdgeCost::Quadratic => 0.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EdgeCost::Exp => "exp",
            EdgeCost::Quadratic => "quadratic",
        }
    }
}

impl fmt::Display for EdgeCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EdgeCost {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exp" => Ok(EdgeCost::Exp),
            "quadratic" => Ok(EdgeCost::Quadratic),
            other => Err(Error::InvalidParameter(alloc::format!("unknown cost `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_closed_forms() {
        let c = EdgeCost::Exp;
        assert_eq!(c.inverse_derivative(0.0), 0.0);
        assert!((c.inverse_derivative(2.0 * libm::sinh(1.0)) - 1.0).abs() < 1e-15);
        for i in -20..=20 {
            let x = i as f64 * 0.5;
            assert!((c.inverse_derivative(c.derivative(x)) - x).abs() < 1e-10);
            let y = c.derivative(x);
            assert!((c.conjugate(y) - (y * x - c.value(x))).abs() < 1e-9 * (1.0 + c.value(x)));
        }
    }

    #[test]
    fn parse_round_trip() {
        for c in [EdgeCost::Exp, EdgeCost::Quadratic] {
            assert_eq!(c.name().parse::<EdgeCost>().unwrap(), c);
        }
        assert!("cubic".parse::<EdgeCost>().is_err());
    }
}
