//! Desk-scale ground truth: exhaustive tautology checking, DPLL, circuit
//! clausification and minimal refutation length search.

mod clausify;
mod dpll;
mod minref;
mod taut;

use std::time::{Duration, Instant};

use serde::Serialize;

pub use clausify::clausify_negation;
pub use dpll::{dpll_sat, SatResult};
pub use minref::{min_refutation_length, MinRefutation};
pub use taut::{is_tautology, TautologyResult};

/// Limits for the exhaustive searches. Every search stops cleanly and
/// reports exhaustion once one of them is hit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SearchBudget {
    /// Assignments to enumerate (tautology), decisions (DPLL) or search
    /// nodes (minimal refutation length).
    pub max_assignments: u64,
    pub max_lines: usize,
    pub max_seconds: f64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_assignments: 1 << 28, max_lines: 12, max_seconds: 60.0 }
    }
}

impl SearchBudget {
    pub fn with_seconds(max_seconds: f64) -> Self {
        SearchBudget { max_seconds, ..Self::default() }
    }

    pub(crate) fn deadline(&self) -> Deadline {
        Deadline { start: Instant::now(), limit: Duration::from_secs_f64(self.max_seconds.max(0.0)) }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Deadline {
    start: Instant,
    limit: Duration,
}

impl Deadline {
    pub(crate) fn passed(&self) -> bool {
        self.start.elapsed() > self.limit
    }
}
