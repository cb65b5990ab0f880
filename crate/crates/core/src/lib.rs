//! Generalized rank weights of linear codes over `F_{q^m}/F_q`.
//!
//! Two independent computations of the weight hierarchy are provided:
//! [`weights::grw_m`] searches Frobenius-invariant subspaces, and
//! [`weights::grw_d`] minimises over subcodes the largest rank weight found
//! in their Frobenius closure. [`theorems`] turns the structural facts about
//! these weights (monotonicity, Singleton bound, duality with the dual code's
//! hierarchy, MRD characterisation) into executable checks, and [`sweep`]
//! runs those checks exhaustively or on seeded random codes.

pub mod code;
pub mod error;
pub mod field;
pub mod galois;
pub mod io;
pub mod linalg;
pub mod par;
mod poly;
pub mod report;
pub mod sweep;
pub mod theorems;
pub mod weights;
pub mod zoo;

pub use code::{ExpansionBasis, ExpansionMatrix, LinearCode};
pub use error::{Error, Result};
pub use field::{ExtElem, FieldTower};
pub use galois::GammaSubspace;
pub use linalg::{Level, Matrix, Subspace};
pub use par::Execution;
pub use weights::WeightHierarchy;

/// Default cap on the number of items any single exhaustive enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Knobs shared by every enumeration-heavy routine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    /// Maximum number of subspaces, codewords or closure elements a single
    /// enumeration may visit before failing with [`Error::BudgetExceeded`].
    pub budget: u64,
    pub exec: Execution,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            budget: DEFAULT_BUDGET,
            exec: Execution::default(),
        }
    }
}

impl Settings {
    pub fn sequential() -> Self {
        Settings {
            exec: Execution::Sequential,
            ..Settings::default()
        }
    }

    pub(crate) fn require(&self, needed: Option<u128>) -> Result<u128> {
        match needed {
            Some(n) if n <= self.budget as u128 => Ok(n),
            _ => Err(Error::BudgetExceeded {
                needed: needed.map_or_else(|| "more than 2^128".into(), |n| n.to_string()),
                budget: self.budget,
            }),
        }
    }
}
