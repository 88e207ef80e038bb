//! Payoff functionals for every game variant.
//!
//! A firm's profit is always `quantity * (margin - total quantity)`, with
//! the price floored at zero once total production exceeds the intercept.
//! The variants differ in how quantities are measured (expected value,
//! photon counting, lossy detection) and in which margin applies.

use crate::error::{Error, Result};
use crate::model::{Coupling, InfoStructure, MarketParams, Strategy};
use crate::optics::{truncated_expectation, PoissonTruncation};
use crate::scalar::Scalar;

/// Profits of the two firms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffPair<S> {
    pub u1: S,
    pub u2: S,
}

/// Profits in the asymmetric-information game: firm 1, and firm 2 by type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BayesPayoffs<S> {
    pub u1: S,
    pub u2_high: S,
    pub u2_low: S,
}

/// `(n1, n2)` from squared strategies and squared trig factors.
#[inline]
pub(crate) fn quantities_raw<S: Scalar>(w1: S, w2: S, cos_sq: S, sin_sq: S) -> (S, S) {
    let half = S::cst(0.5);
    (
        half * (w1 * cos_sq + w2 * sin_sq),
        half * (w2 * cos_sq + w1 * sin_sq),
    )
}

#[inline]
pub(crate) fn apparatus_pair_raw<S: Scalar>(w1: S, w2: S, cos_sq: S, sin_sq: S, k: S) -> (S, S) {
    let (n1, n2) = quantities_raw(w1, w2, cos_sq, sin_sq);
    let margin = k - n1 - n2;
    (n1 * margin, n2 * margin)
}

#[inline]
pub(crate) fn lossy_pair_raw<S: Scalar>(
    w1: S,
    w2: S,
    cos_sq: S,
    sin_sq: S,
    eta2: S,
    k: S,
) -> (S, S) {
    let (n1, raw_n2) = quantities_raw(w1, w2, cos_sq, sin_sq);
    let n2 = eta2 * raw_n2;
    let margin = k - n1 - n2;
    (n1 * margin, n2 * margin)
}

#[inline]
pub(crate) fn bayes_triplet_raw<S: Scalar>(
    w1: S,
    w2: S,
    cos_sq: S,
    sin_sq: S,
    k: S,
    margin_high: S,
    margin_low: S,
) -> (S, S, S) {
    let (n1, n2) = quantities_raw(w1, w2, cos_sq, sin_sq);
    (
        n1 * (k - n1 - n2),
        n2 * (margin_high - n1 - n2),
        n2 * (margin_low - n1 - n2),
    )
}

/// Classical Cournot profits `u_i = q_i [P(Q) - c]` with linear price
/// `P(Q) = a - Q` floored at zero for `Q > a`. In the infinite-limit market
/// the floor never binds and `u_i = q_i (k - Q)` throughout.
pub fn classical_payoffs<S: Scalar>(q1: S, q2: S, market: &MarketParams<S>) -> PayoffPair<S> {
    let k = market.margin();
    match (market.intercept(), market.cost()) {
        (Some(a), Some(c)) if q1 + q2 > a => PayoffPair {
            u1: -c * q1,
            u2: -c * q2,
        },
        _ => PayoffPair {
            u1: q1 * (k - q1 - q2),
            u2: q2 * (k - q1 - q2),
        },
    }
}

/// Profits under the expectation-value measuring apparatus:
/// `u_i = n_i [k - (x1^2 + x2^2)/2]` with the quantities of
/// [`crate::optics::expected_quantities`]. At `gamma = 0` this is the
/// classical game with `q_i = x_i^2 / 2` (in the linear-price region).
pub fn classical_apparatus_payoffs<S: Scalar>(
    x1: Strategy<S>,
    x2: Strategy<S>,
    gamma: Coupling<S>,
    k: S,
) -> PayoffPair<S> {
    let (cg, sg) = (gamma.gamma().cos(), gamma.gamma().sin());
    let (u1, u2) = apparatus_pair_raw(
        x1.get() * x1.get(),
        x2.get() * x2.get(),
        cg * cg,
        sg * sg,
        k,
    );
    PayoffPair { u1, u2 }
}

/// Profits under photon counting in the infinite-limit market:
/// `u_i = n_i [k - 1 - (x1^2 + x2^2)/2]`. Identical to
/// [`classical_apparatus_payoffs`] with `k` replaced by `k - 1` (the unit
/// quantum of counting noise eats one unit of margin).
///
/// Rejects finite markets; the closed form only holds in the joint limit
/// a, c -> infinity.
pub fn quantum_apparatus_payoffs_limit<S: Scalar>(
    x1: Strategy<S>,
    x2: Strategy<S>,
    gamma: Coupling<S>,
    market: &MarketParams<S>,
) -> Result<PayoffPair<S>> {
    if !market.is_infinite_limit() {
        return Err(Error::InfiniteLimitRequired);
    }
    Ok(classical_apparatus_payoffs(
        x1,
        x2,
        gamma,
        market.margin() - S::one(),
    ))
}

/// Profits under photon counting at finite `a`, `c`: the truncated
/// expectation of the counting kernel
///
/// ```text
/// u_i(m1, m2) = m_i (a - c - m1 - m2)   if m1 + m2 <= a
///             = -c m_i                  otherwise (price floored at zero)
/// ```
pub fn quantum_apparatus_payoffs_finite<S: Scalar>(
    x1: Strategy<S>,
    x2: Strategy<S>,
    gamma: Coupling<S>,
    market: &MarketParams<S>,
    trunc: &PoissonTruncation<S>,
) -> Result<PayoffPair<S>> {
    let (a, c) = match (market.intercept(), market.cost()) {
        (Some(a), Some(c)) => (a, c),
        _ => return Err(Error::FiniteMarketRequired),
    };
    let kernel = |own: usize, other: usize| {
        let m_own = S::from_usize(own).unwrap();
        let m_tot = S::from_usize(own + other).unwrap();
        if m_tot <= a {
            m_own * (a - c - m_tot)
        } else {
            -c * m_own
        }
    };
    let u1 = truncated_expectation(|m1, m2| kernel(m1, m2), x1, x2, gamma, trunc)?;
    let u2 = truncated_expectation(|m1, m2| kernel(m2, m1), x1, x2, gamma, trunc)?;
    Ok(PayoffPair { u1, u2 })
}

/// Asymmetric-information profits: firm 1 prices at its average cost `c1`,
/// firm 2 at its realized type cost. `x2` is the strategy of whichever type
/// is being evaluated.
pub fn bayes_payoffs<S: Scalar>(
    x1: Strategy<S>,
    x2: Strategy<S>,
    gamma: Coupling<S>,
    info: &InfoStructure<S>,
) -> BayesPayoffs<S> {
    let (cg, sg) = (gamma.gamma().cos(), gamma.gamma().sin());
    let (u1, u2_high, u2_low) = bayes_triplet_raw(
        x1.get() * x1.get(),
        x2.get() * x2.get(),
        cg * cg,
        sg * sg,
        info.margin(),
        info.margin_high(),
        info.margin_low(),
    );
    BayesPayoffs {
        u1,
        u2_high,
        u2_low,
    }
}

/// Profits when firm 2's mode suffers photon loss of transmissivity `eta2`
/// before detection: `u_i = n_i [k - n1 - n2]` with the lossy quantities.
/// At `eta2 = 1` this equals [`classical_apparatus_payoffs`] bit for bit.
pub fn lossy_payoffs<S: Scalar>(
    x1: Strategy<S>,
    x2: Strategy<S>,
    gamma: Coupling<S>,
    eta2: S,
    k: S,
) -> Result<PayoffPair<S>> {
    if !eta2.is_finite() || eta2 <= S::zero() || eta2 > S::one() {
        return Err(Error::InvalidTransmissivity { eta: eta2.as_f64() });
    }
    let (cg, sg) = (gamma.gamma().cos(), gamma.gamma().sin());
    let (u1, u2) = lossy_pair_raw(
        x1.get() * x1.get(),
        x2.get() * x2.get(),
        cg * cg,
        sg * sg,
        eta2,
        k,
    );
    Ok(PayoffPair { u1, u2 })
}
