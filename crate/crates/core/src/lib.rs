pub mod asymptotics;
pub mod chain;
pub mod error;
pub mod experiments;
pub mod fock;
pub mod gaussian;
pub mod numerics;
pub mod perturbation;

pub use chain::{ChainSolution, ModeData, Parity, SystemParams};
pub use error::{Error, Result};
