//! Multiple-knapsack QUBO tooling: instance generation, QUBO compilation,
//! exact baselines, statevector simulation of variational ansätze,
//! annealing baselines, quality metrics, a hardware runtime model and a
//! benchmarking harness.

pub mod annealing;
pub mod bench;
pub mod bitstring;
pub mod error;
pub mod exact;
pub mod hwmodel;
pub mod instance;
pub mod metrics;
pub mod optimize;
pub mod qubo;
pub mod seed;
pub mod simulator;
pub mod variational;

pub use bitstring::Bitstring;
pub use error::{Error, Result};
pub use instance::KnapsackInstance;
pub use qubo::{PenaltyWeights, Qubo, QuboModel};
