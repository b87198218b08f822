//! Compartment occupancy types shared by the simulators.

use serde::{Deserialize, Serialize};

/// Human compartment occupancy: susceptible, exposed, asymptomatic
/// infectious, symptomatic infectious, recovered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Compartments {
    pub s: u64,
    pub e: u64,
    pub a: u64,
    pub i: u64,
    pub r: u64,
}

impl Compartments {
    pub fn total(&self) -> u64 {
        self.s + self.e + self.a + self.i + self.r
    }

    /// Infectious pressure numerator `I + alpha * A`.
    pub fn infectious_load(&self, alpha: f64) -> f64 {
        self.i as f64 + alpha * self.a as f64
    }
}

/// Vector compartment occupancy; infected vectors never recover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VectorCompartments {
    pub s: u64,
    pub e: u64,
    pub i: u64,
}

impl VectorCompartments {
    pub fn total(&self) -> u64 {
        self.s + self.e + self.i
    }
}
