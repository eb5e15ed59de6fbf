use super::{FuzzyError, MembershipFunction};

/// Closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Universe {
    lo: f64,
    hi: f64,
}

impl Universe {
    pub fn new(lo: f64, hi: f64) -> Result<Self, FuzzyError> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(FuzzyError::InvalidUniverse { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn unit() -> Self {
        Self { lo: 0.0, hi: 1.0 }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn midpoint(&self) -> f64 {
        self.lo + (self.hi - self.lo) / 2.0
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }

    /// The `i`-th of `resolution` evenly spaced points, endpoints included.
    pub fn grid_point(&self, i: usize, resolution: usize) -> f64 {
        debug_assert!(resolution >= 2 && i < resolution);
        if i + 1 == resolution {
            return self.hi;
        }
        self.lo + (self.hi - self.lo) * (i as f64) / ((resolution - 1) as f64)
    }

    pub fn grid(&self, resolution: usize) -> impl Iterator<Item = f64> + '_ {
        (0..resolution).map(move |i| self.grid_point(i, resolution))
    }
}

/// A named quantity whose values are labelled fuzzy sets.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticVariable {
    name: String,
    universe: Universe,
    sets: Vec<(String, MembershipFunction)>,
}

impl LinguisticVariable {
    pub fn new(
        name: impl Into<String>,
        universe: Universe,
        sets: Vec<(String, MembershipFunction)>,
    ) -> Result<Self, FuzzyError> {
        let name = name.into();
        if sets.is_empty() {
            return Err(FuzzyError::NoSets(name));
        }
        for (i, (label, _)) in sets.iter().enumerate() {
            if sets[..i].iter().any(|(other, _)| other == label) {
                return Err(FuzzyError::DuplicateSet {
                    variable: name,
                    set: label.clone(),
                });
            }
        }
        Ok(Self {
            name,
            universe,
            sets,
        })
    }

    /// The two-set `high` / `not_high` variable on `[0, 1]` used throughout the
    /// ranking system: `high` rises linearly to 1 at the top of the universe and
    /// `not_high` is its pointwise complement.
    pub fn high_not_high(name: impl Into<String>) -> Self {
        let sets = vec![
            (
                "high".to_string(),
                MembershipFunction::Triangular {
                    a: 0.0,
                    b: 1.0,
                    c: 1.0,
                },
            ),
            (
                "not_high".to_string(),
                MembershipFunction::Triangular {
                    a: 0.0,
                    b: 0.0,
                    c: 1.0,
                },
            ),
        ];
        Self {
            name: name.into(),
            universe: Universe::unit(),
            sets,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn sets(&self) -> &[(String, MembershipFunction)] {
        &self.sets
    }

    pub fn set_index(&self, label: &str) -> Option<usize> {
        self.sets.iter().position(|(l, _)| l == label)
    }

    pub fn set(&self, label: &str) -> Option<&MembershipFunction> {
        self.set_index(label).map(|i| &self.sets[i].1)
    }

    /// Same sets and universe under another name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..self.clone()
        }
    }
}
