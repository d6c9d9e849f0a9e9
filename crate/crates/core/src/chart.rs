//! A single coordinate chart: named variables, the denominator factors
//! that scalar functions are allowed to divide by, and an optional
//! periodic variable carrying a finite Fourier layer.

use crate::poly::Poly;
use crate::scalar::Rat;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub struct Periodic {
    /// Index of the periodic variable.
    pub var: usize,
    /// Base frequency; every trigonometric frequency is an integer
    /// multiple of this.
    pub base_freq: Rat,
}

/// Chart descriptor shared by every scalar function defined on it.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    vars: Vec<String>,
    denominators: Vec<(String, Poly<Rat>)>,
    periodic: Option<Periodic>,
}

impl Chart {
    pub fn new(vars: Vec<String>) -> Self {
        let mut seen = std::collections::HashSet::new();
        for v in &vars {
            assert!(seen.insert(v.clone()), "duplicate chart variable {v}");
        }
        Chart {
            vars,
            denominators: Vec::new(),
            periodic: None,
        }
    }

    /// Register a denominator factor. Factors should be distinct
    /// irreducible polynomials (`z`, `1 + r^2`, ...).
    pub fn with_denominator(mut self, name: &str, factor: Poly<Rat>) -> Self {
        assert_eq!(factor.nvars(), self.vars.len());
        assert!(!factor.is_zero(), "zero denominator factor");
        self.denominators.push((name.to_string(), factor));
        self
    }

    pub fn with_periodic(mut self, var: &str, base_freq: Rat) -> Self {
        use num_traits::Signed;
        let idx = self.var_index(var).expect("unknown periodic variable");
        assert!(base_freq.is_positive(), "base frequency must be positive");
        self.periodic = Some(Periodic {
            var: idx,
            base_freq,
        });
        self
    }

    pub fn shared(self) -> Arc<Chart> {
        Arc::new(self)
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn denominators(&self) -> &[(String, Poly<Rat>)] {
        &self.denominators
    }

    pub fn periodic(&self) -> Option<&Periodic> {
        self.periodic.as_ref()
    }

    pub(crate) fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}
