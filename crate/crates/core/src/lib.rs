//! Continuous-variable Cournot duopoly without entanglement.
//!
//! Two firms encode production quantities as coherent-state displacements;
//! a beam splitter couples the modes ("virtual cooperation") and the
//! measured photon numbers set the market quantities. The library provides
//! the payoff functionals for both measuring apparatuses (expectation-value
//! and photon-counting), closed-form Nash/Bayes-Nash equilibria for the
//! symmetric, asymmetric-information and asymmetric-photon-loss variants,
//! and an independent best-response oracle that re-derives every closed
//! form numerically.
//!
//! All arithmetic is generic over the floating-point scalar via
//! [`Scalar`]; the `*F64` aliases below fix the common instantiation.

pub mod equilibrium;
mod error;
pub mod model;
pub mod optics;
pub mod payoffs;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use model::{
    Coupling, EquilibriumReport, InfoStructure, LossChannel, MarketParams, Region, SolutionSource,
    Strategy, COUPLING_LIMIT_EPSILON,
};
pub use optics::{ModeAmplitudes, PoissonTruncation, DEFAULT_CUTOFF_CEILING, DEFAULT_TAIL_BOUND};
pub use payoffs::{BayesPayoffs, PayoffPair};

pub use equilibrium::{FiniteOptimum, OracleConfig, OracleGame, RegionLabel};

/// `f64` instantiations of the domain types.
pub type MarketParamsF64 = MarketParams<f64>;
pub type StrategyF64 = Strategy<f64>;
pub type CouplingF64 = Coupling<f64>;
pub type InfoStructureF64 = InfoStructure<f64>;
pub type LossChannelF64 = LossChannel<f64>;
pub type EquilibriumReportF64 = EquilibriumReport<f64>;
pub type PayoffPairF64 = PayoffPair<f64>;
pub type BayesPayoffsF64 = BayesPayoffs<f64>;
pub type PoissonTruncationF64 = PoissonTruncation<f64>;
pub type OracleConfigF64 = OracleConfig<f64>;
pub type OracleGameF64 = OracleGame<f64>;
