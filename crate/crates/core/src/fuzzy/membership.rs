use std::fmt;

use super::FuzzyError;

/// A parameterized membership curve. Construct through the checked
/// constructors so the parameter ordering constraints always hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MembershipFunction {
    Triangular { a: f64, b: f64, c: f64 },
    Trapezoidal { a: f64, b: f64, c: f64, d: f64 },
    Gaussian { sigma: f64, mean: f64 },
    Sigmoid { slope: f64, inflection: f64 },
}

fn check_finite(kind: &str, params: &[f64]) -> Result<(), FuzzyError> {
    if params.iter().all(|p| p.is_finite()) {
        Ok(())
    } else {
        Err(FuzzyError::InvalidMembership(format!(
            "{kind} parameters must be finite, got {params:?}"
        )))
    }
}

impl MembershipFunction {
    /// Triangle with feet at `a` and `c` and its peak at `b`; requires `a <= b <= c`.
    pub fn triangular(a: f64, b: f64, c: f64) -> Result<Self, FuzzyError> {
        check_finite("trimf", &[a, b, c])?;
        if !(a <= b && b <= c) {
            return Err(FuzzyError::InvalidMembership(format!(
                "trimf requires a <= b <= c, got {a} {b} {c}"
            )));
        }
        Ok(Self::Triangular { a, b, c })
    }

    /// Trapezoid with plateau `[b, c]`; requires `a <= b <= c <= d`.
    pub fn trapezoidal(a: f64, b: f64, c: f64, d: f64) -> Result<Self, FuzzyError> {
        check_finite("trapmf", &[a, b, c, d])?;
        if !(a <= b && b <= c && c <= d) {
            return Err(FuzzyError::InvalidMembership(format!(
                "trapmf requires a <= b <= c <= d, got {a} {b} {c} {d}"
            )));
        }
        Ok(Self::Trapezoidal { a, b, c, d })
    }

    pub fn gaussian(sigma: f64, mean: f64) -> Result<Self, FuzzyError> {
        check_finite("gaussmf", &[sigma, mean])?;
        if sigma <= 0.0 {
            return Err(FuzzyError::InvalidMembership(format!(
                "gaussmf requires sigma > 0, got {sigma}"
            )));
        }
        Ok(Self::Gaussian { sigma, mean })
    }

    pub fn sigmoid(slope: f64, inflection: f64) -> Result<Self, FuzzyError> {
        check_finite("sigmf", &[slope, inflection])?;
        Ok(Self::Sigmoid { slope, inflection })
    }

    /// Builds a function from its configuration-file keyword and parameter list.
    pub fn from_parts(kind: &str, params: &[f64]) -> Result<Self, FuzzyError> {
        let arity = |n: usize| {
            if params.len() == n {
                Ok(())
            } else {
                Err(FuzzyError::InvalidMembership(format!(
                    "{kind} takes {n} parameters, got {}",
                    params.len()
                )))
            }
        };
        match kind {
            "trimf" => {
                arity(3)?;
                Self::triangular(params[0], params[1], params[2])
            }
            "trapmf" => {
                arity(4)?;
                Self::trapezoidal(params[0], params[1], params[2], params[3])
            }
            "gaussmf" => {
                arity(2)?;
                Self::gaussian(params[0], params[1])
            }
            "sigmf" => {
                arity(2)?;
                Self::sigmoid(params[0], params[1])
            }
            other => Err(FuzzyError::InvalidMembership(format!(
                "unknown membership function kind '{other}'"
            ))),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Triangular { .. } => "trimf",
            Self::Trapezoidal { .. } => "trapmf",
            Self::Gaussian { .. } => "gaussmf",
            Self::Sigmoid { .. } => "sigmf",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            Self::Triangular { a, b, c } => vec![a, b, c],
            Self::Trapezoidal { a, b, c, d } => vec![a, b, c, d],
            Self::Gaussian { sigma, mean } => vec![sigma, mean],
            Self::Sigmoid { slope, inflection } => vec![slope, inflection],
        }
    }

    /// Degree of membership of `x`, always in `[0, 1]`.
    ///
    /// The piecewise-linear kinds are evaluated exactly: the peak (or plateau)
    /// is 1 and the feet are 0 even when an edge is vertical.
    pub fn eval(&self, x: f64) -> f64 {
        let degree = match *self {
            Self::Triangular { a, b, c } => {
                if x == b {
                    1.0
                } else if x <= a || x >= c {
                    0.0
                } else if x < b {
                    (x - a) / (b - a)
                } else {
                    (c - x) / (c - b)
                }
            }
            Self::Trapezoidal { a, b, c, d } => {
                if b <= x && x <= c {
                    1.0
                } else if x <= a || x >= d {
                    0.0
                } else if x < b {
                    (x - a) / (b - a)
                } else {
                    (d - x) / (d - c)
                }
            }
            Self::Gaussian { sigma, mean } => {
                let z = (x - mean) / sigma;
                (-0.5 * z * z).exp()
            }
            Self::Sigmoid { slope, inflection } => 1.0 / (1.0 + (-slope * (x - inflection)).exp()),
        };
        degree.clamp(0.0, 1.0)
    }
}

impl fmt::Display for MembershipFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind_name())?;
        for p in self.params() {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}
