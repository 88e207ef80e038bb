//! Domain types: market environment, strategies, coupling, information
//! structure and loss channels.
//!
//! All types are immutable after construction; constructors validate their
//! documented domain and reject everything else with a typed error.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Market environment of the duopoly: price intercept `a`, unit cost `c`
/// and the margin `k = a - c`.
///
/// Two modes exist. The finite mode stores `a` and `c` explicitly; the
/// infinite-limit mode keeps only `k` (the joint limit a, c -> infinity at
/// fixed k >= 1, under which the photon-counting payoff has a closed form).
/// The modes are distinct constructors so callers must choose.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarketParams<S> {
    intercept: Option<S>,
    cost: Option<S>,
    margin: S,
}

impl<S: Scalar> MarketParams<S> {
    /// Finite market with intercept `a` and unit cost `c`; requires
    /// `a > c >= 0` and finite inputs.
    pub fn new(a: S, c: S) -> Result<Self> {
        if !a.is_finite() || !c.is_finite() || c < S::zero() || a <= c {
            return Err(Error::InvalidMarket {
                a: a.as_f64(),
                c: c.as_f64(),
            });
        }
        Ok(Self {
            intercept: Some(a),
            cost: Some(c),
            margin: a - c,
        })
    }

    /// Infinite-limit market: a, c -> infinity with `k = a - c` fixed,
    /// `k >= 1`.
    pub fn infinite_limit(k: S) -> Result<Self> {
        if !k.is_finite() || k < S::one() {
            return Err(Error::InvalidLimitMargin { k: k.as_f64() });
        }
        Ok(Self {
            intercept: None,
            cost: None,
            margin: k,
        })
    }

    /// Price intercept `a`; `None` in the infinite-limit mode.
    pub fn intercept(&self) -> Option<S> {
        self.intercept
    }

    /// Unit cost `c`; `None` in the infinite-limit mode.
    pub fn cost(&self) -> Option<S> {
        self.cost
    }

    /// Margin `k = a - c`.
    pub fn margin(&self) -> S {
        self.margin
    }

    pub fn is_infinite_limit(&self) -> bool {
        self.intercept.is_none()
    }
}

/// A firm's move: the non-negative displacement magnitude `x` applied to
/// its vacuum mode.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Strategy<S>(S);

impl<S: Scalar> Strategy<S> {
    pub fn new(x: S) -> Result<Self> {
        if !x.is_finite() || x < S::zero() {
            return Err(Error::InvalidStrategy { x: x.as_f64() });
        }
        Ok(Self(x))
    }

    /// The displacement magnitude.
    pub fn get(&self) -> S {
        self.0
    }

    /// Expected photon number `x^2 / 2` of the encoded mode.
    pub fn quantity(&self) -> S {
        self.0 * self.0 / S::cst(2.0)
    }
}

/// Beam-splitter angle `gamma` in `[0, pi/4)`: the degree of virtual
/// cooperation between the firms.
///
/// The open boundary `pi/4` itself is never accepted; limits are requested
/// through [`Coupling::limit`], which backs off by a fixed epsilon.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Coupling<S>(S);

/// Offset used to represent the open-boundary evaluation `gamma -> pi/4`.
pub const COUPLING_LIMIT_EPSILON: f64 = 1e-9;

impl<S: Scalar> Coupling<S> {
    pub fn new(gamma: S) -> Result<Self> {
        if !gamma.is_finite() || gamma < S::zero() || gamma >= S::FRAC_PI_4() {
            return Err(Error::InvalidCoupling {
                gamma: gamma.as_f64(),
            });
        }
        Ok(Self(gamma))
    }

    /// No coupling: the classical game.
    pub fn zero() -> Self {
        Self(S::zero())
    }

    /// The ideal-cooperation limit `pi/4 - 1e-9`.
    pub fn limit() -> Self {
        Self(S::FRAC_PI_4() - S::cst(COUPLING_LIMIT_EPSILON))
    }

    pub fn gamma(&self) -> S {
        self.0
    }
}

/// Asymmetric-information environment: firm 2's unit cost is `c_high` with
/// probability `theta` and `c_low` otherwise; firm 1 carries the average
/// cost `c1 = theta c_high + (1-theta) c_low`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfoStructure<S> {
    theta: S,
    c_high: S,
    c_low: S,
    c1: S,
    delta: S,
    margin: S,
}

impl<S: Scalar> InfoStructure<S> {
    /// Requires `0 < theta < 1`, `c_high > c_low >= 0` and `a > c_high`.
    pub fn new(theta: S, c_high: S, c_low: S, a: S) -> Result<Self> {
        if !theta.is_finite() || theta <= S::zero() || theta >= S::one() {
            return Err(Error::InvalidTheta {
                theta: theta.as_f64(),
            });
        }
        if !c_high.is_finite() || !c_low.is_finite() || c_low < S::zero() || c_high <= c_low {
            return Err(Error::InvalidCosts {
                c_high: c_high.as_f64(),
                c_low: c_low.as_f64(),
            });
        }
        if !a.is_finite() || a <= c_high {
            return Err(Error::InterceptBelowCost {
                a: a.as_f64(),
                c_high: c_high.as_f64(),
            });
        }
        let c1 = theta * c_high + (S::one() - theta) * c_low;
        Ok(Self {
            theta,
            c_high,
            c_low,
            c1,
            delta: c_high - c_low,
            margin: a - c1,
        })
    }

    /// Build from the reduced parameters the profit formulas depend on:
    /// `(theta, delta/k, k)`. Uses the canonical embedding `c_low = 0`,
    /// `c_high = delta`, `a = k + theta delta`.
    pub fn from_margin(theta: S, delta_over_k: S, k: S) -> Result<Self> {
        if !k.is_finite() || k <= S::zero() {
            return Err(Error::InvalidMargin { k: k.as_f64() });
        }
        let delta = delta_over_k * k;
        Self::new(theta, delta, S::zero(), k + theta * delta)
    }

    /// Probability of the high-cost type.
    pub fn theta(&self) -> S {
        self.theta
    }

    pub fn c_high(&self) -> S {
        self.c_high
    }

    pub fn c_low(&self) -> S {
        self.c_low
    }

    /// Firm 1's unit cost `theta c_high + (1-theta) c_low`.
    pub fn c1(&self) -> S {
        self.c1
    }

    /// Cost spread `delta = c_high - c_low`.
    pub fn delta(&self) -> S {
        self.delta
    }

    /// Firm 1's margin `k = a - c1`.
    pub fn margin(&self) -> S {
        self.margin
    }

    /// `c_high - c1 = (1-theta) delta`, the gap that sets the region
    /// boundary.
    pub fn cost_gap(&self) -> S {
        self.c_high - self.c1
    }

    /// High-cost type's margin `a - c_high`.
    pub fn margin_high(&self) -> S {
        self.margin - self.cost_gap()
    }

    /// Low-cost type's margin `a - c_low`.
    pub fn margin_low(&self) -> S {
        self.margin + (self.c1 - self.c_low)
    }

    /// Degree of information asymmetry `delta^2 theta (1-theta) / k^2`.
    pub fn asymmetry_degree(&self) -> S {
        let w = self.delta * self.delta * self.theta * (S::one() - self.theta);
        w / (self.margin * self.margin)
    }
}

/// Photon-loss channel with intensity transmissivity `eta` in `(0, 1]`
/// (amplitudes scale by `sqrt(eta) = e^{-kappa t / 2}`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossChannel<S> {
    eta: S,
    kappa_t: Option<S>,
}

impl<S: Scalar> LossChannel<S> {
    pub fn from_eta(eta: S) -> Result<Self> {
        if !eta.is_finite() || eta <= S::zero() || eta > S::one() {
            return Err(Error::InvalidTransmissivity { eta: eta.as_f64() });
        }
        Ok(Self {
            eta,
            kappa_t: None,
        })
    }

    /// From the decay exponent `kappa t >= 0`; `eta = e^{-kappa t}`.
    pub fn from_kappa_t(kappa_t: S) -> Result<Self> {
        if !kappa_t.is_finite() || kappa_t < S::zero() {
            return Err(Error::InvalidDecay {
                kappa_t: kappa_t.as_f64(),
            });
        }
        Ok(Self {
            eta: (-kappa_t).exp(),
            kappa_t: Some(kappa_t),
        })
    }

    pub fn eta(&self) -> S {
        self.eta
    }

    /// Decay exponent, if the channel was built from one.
    pub fn kappa_t(&self) -> Option<S> {
        self.kappa_t
    }

    /// Amplitude scale factor `sqrt(eta)`.
    pub fn amplitude_scale(&self) -> S {
        self.eta.sqrt()
    }
}

/// Parameter region of the asymmetric-information game.
///
/// In region B the high-cost type is pinned at zero production; games
/// without an information structure report `NotApplicable`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    A,
    B,
    NotApplicable,
}

impl Region {
    pub fn as_str(&self) -> &'static str {
        match self {
            Region::A => "A",
            Region::B => "B",
            Region::NotApplicable => "none",
        }
    }
}

/// How an equilibrium was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionSource {
    ClosedForm,
    Oracle,
}

/// Universal result record for an equilibrium computation.
///
/// `strategies` holds one entry per firm (or per firm type in the Bayesian
/// game: `[x1, x2_high, x2_low]`); `profits` always holds the two firms'
/// (expected) equilibrium profits. `residual` is the best-response residual:
/// zero for closed forms, the largest unilateral improvement found by a
/// fine scan for oracle solutions.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport<S> {
    pub strategies: Vec<Strategy<S>>,
    pub profits: Vec<S>,
    pub region: Region,
    pub source: SolutionSource,
    pub residual: S,
}
