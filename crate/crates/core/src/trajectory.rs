//! Ground-truth output of one simulation run.

use crate::compartments::Compartments;

/// Event counts produced by a single simulated day.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DayEvents {
    pub new_exposures: u64,
    pub new_symptomatic: u64,
    pub new_asymptomatic: u64,
}

/// Daily event and compartment paths from one run.
#[derive(Debug, Clone, Default)]
pub struct TrueTrajectory {
    /// Initial population.
    pub population: u64,
    pub new_exposures: Vec<u64>,
    pub new_symptomatic: Vec<u64>,
    pub new_asymptomatic: Vec<u64>,
    /// Human compartment state at the start of day 0.
    pub initial: Compartments,
    /// Human compartment state at the end of each day.
    pub compartments: Vec<Compartments>,
}

impl TrueTrajectory {
    pub(crate) fn with_capacity(population: u64, initial: Compartments, days: usize) -> Self {
        Self {
            population,
            new_exposures: Vec::with_capacity(days),
            new_symptomatic: Vec::with_capacity(days),
            new_asymptomatic: Vec::with_capacity(days),
            initial,
            compartments: Vec::with_capacity(days),
        }
    }

    pub(crate) fn push(&mut self, events: DayEvents, state: Compartments) {
        self.new_exposures.push(events.new_exposures);
        self.new_symptomatic.push(events.new_symptomatic);
        self.new_asymptomatic.push(events.new_asymptomatic);
        self.compartments.push(state);
    }

    /// Daily true case counts (alias of the symptomatic incidence series).
    pub fn true_cases(&self) -> &[u64] {
        &self.new_symptomatic
    }

    pub fn days(&self) -> usize {
        self.new_symptomatic.len()
    }
}
