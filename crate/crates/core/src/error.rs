//! Error type shared by all modules.

/// Errors reported by constructors, payoff evaluators and solvers.
///
/// Domain violations carry the offending values (as `f64`) so diagnostics
/// can name the violated invariant.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("market requires finite a > c >= 0, got a={a}, c={c}")]
    InvalidMarket { a: f64, c: f64 },

    #[error("infinite-limit market requires k >= 1, got k={k}")]
    InvalidLimitMargin { k: f64 },

    #[error("margin k must be positive and finite, got k={k}")]
    InvalidMargin { k: f64 },

    #[error("strategy must be a finite displacement >= 0, got x={x}")]
    InvalidStrategy { x: f64 },

    #[error("coupling angle must satisfy 0 <= gamma < pi/4, got gamma={gamma}")]
    InvalidCoupling { gamma: f64 },

    #[error("loss-game coupling angle must satisfy 0 <= gamma <= pi/4, got gamma={gamma}")]
    InvalidLossCoupling { gamma: f64 },

    #[error("transmissivity must satisfy 0 < eta <= 1, got eta={eta}")]
    InvalidTransmissivity { eta: f64 },

    #[error("decay exponent must satisfy kappa_t >= 0, got kappa_t={kappa_t}")]
    InvalidDecay { kappa_t: f64 },

    #[error("type probability must satisfy 0 < theta < 1, got theta={theta}")]
    InvalidTheta { theta: f64 },

    #[error("unit costs require c_high > c_low >= 0, got c_high={c_high}, c_low={c_low}")]
    InvalidCosts { c_high: f64, c_low: f64 },

    #[error("price intercept must exceed the high cost, got a={a}, c_high={c_high}")]
    InterceptBelowCost { a: f64, c_high: f64 },

    #[error("operation requires a finite market (a, c finite)")]
    FiniteMarketRequired,

    #[error("operation is only valid for an infinite-limit market")]
    InfiniteLimitRequired,

    #[error("region boundary undefined: requires k > c_high - c1, got k={k}, gap={gap}")]
    RegionUndefined { k: f64, gap: f64 },

    #[error("coupling too close to pi/4: |1 - 4cos^4(gamma)| = {denominator} below 1e-14")]
    DegenerateCoupling { denominator: f64 },

    #[error(
        "Poisson truncation cannot certify tail {tail_bound} within cutoff ceiling {ceiling} \
         (mean {lambda})"
    )]
    TruncationOverflow {
        lambda: f64,
        tail_bound: f64,
        ceiling: usize,
    },

    #[error("tail bound must satisfy 0 < tail_bound < 1, got {tail_bound}")]
    InvalidTailBound { tail_bound: f64 },

    #[error(
        "best-response iteration did not converge within {iterations} sweeps \
         (last max step {last_step}, residual {residual})"
    )]
    NonConvergence {
        iterations: usize,
        last_step: f64,
        residual: f64,
        strategies: Vec<f64>,
    },

    #[error("invalid solver configuration: {reason}")]
    InvalidSolverConfig { reason: String },
}

impl Error {
    /// True for failures of a numerical procedure (as opposed to a domain
    /// violation in the inputs).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::TruncationOverflow { .. } | Error::NonConvergence { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
