//! Random words over weighted ordered alphabets: block decompositions,
//! lexicographic rank permutations of the blocks, exact enumeration of the
//! induced laws at small lengths, and seeded Monte Carlo checks of the
//! uniform limit of rank positions at large lengths.
//!
//! The numeric side (weights, probabilities, distances) is generic over the
//! scalar type through [`Real`]; the combinatorial side works on plain
//! integer letters. Concrete `f64`/`f32` aliases live at the crate root.

pub mod alphabet;
pub mod blocks;
pub mod error;
pub mod measure;
pub mod sim;
pub mod stats;
pub mod word;

mod real;

pub use crate::alphabet::WeightedAlphabet;
pub use crate::blocks::{BlockDecomposition, ClassKey};
pub use crate::error::{Error, Result};
pub use crate::real::Real;
pub use crate::word::{Letter, Word};

/// Default scalar aliases.
pub type Alphabet64 = WeightedAlphabet<f64>;
pub type Alphabet32 = WeightedAlphabet<f32>;
pub type ExactDistribution64 = measure::ExactDistribution<f64>;
pub type EmpiricalSample64 = stats::EmpiricalSample<f64>;
pub type ExperimentConfig64 = sim::ExperimentConfig<f64>;
pub type ExperimentReport64 = sim::ExperimentReport<f64>;
