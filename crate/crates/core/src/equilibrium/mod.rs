//! Closed-form equilibria for every game variant, the region classifier for
//! the asymmetric-information game, the symmetric-loss compensation map, and
//! the numerically located optimum of the finite-intercept counting game.
//!
//! Every closed form here is independently re-derived by the best-response
//! oracle in [`oracle`].

mod oracle;

pub use oracle::{best_response_oracle, best_response_oracle_from, deviation_residual, OracleGame};

use crate::error::{Error, Result};
use crate::model::{
    Coupling, EquilibriumReport, InfoStructure, MarketParams, Region, SolutionSource, Strategy,
};
use crate::optics::PoissonTruncation;
use crate::payoffs::{bayes_triplet_raw, quantum_apparatus_payoffs_finite, PayoffPair};
use crate::scalar::Scalar;

/// Outcome of the region-A/region-B classification of the
/// asymmetric-information game.
///
/// `boundary_value = max[(2(c_high - c1) - k) / (k - (c_high - c1)), 0]`
/// is compared against `cos(2 gamma)`: region A when strictly below, region
/// B otherwise (ties classify as B). In region B the high-cost type produces
/// nothing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionLabel<S> {
    pub region: Region,
    pub boundary_value: S,
}

/// Solver configuration for the best-response oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig<S> {
    /// Fixed-point tolerance on the strategy profile.
    pub tol_x: S,
    /// Value tolerance: stop when no role improves its objective by more.
    pub tol_u: S,
    /// Cap on best-response sweeps.
    pub max_iters: usize,
    /// Upper bound of the one-dimensional strategy search.
    pub x_hi: S,
}

impl<S: Scalar> OracleConfig<S> {
    /// Defaults scaled to a margin `k`: search bracket `[0, 4 sqrt(2k)]`.
    pub fn for_margin(k: S) -> Self {
        Self {
            tol_x: S::cst(1e-10),
            tol_u: S::cst(1e-12),
            max_iters: 10_000,
            x_hi: S::cst(4.0) * (S::cst(2.0) * k).sqrt(),
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.tol_x > S::zero()) || !(self.tol_u > S::zero()) {
            return Err(Error::InvalidSolverConfig {
                reason: "tolerances must be positive".into(),
            });
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidSolverConfig {
                reason: "max_iters must be at least 1".into(),
            });
        }
        if !(self.x_hi > S::zero()) || !self.x_hi.is_finite() {
            return Err(Error::InvalidSolverConfig {
                reason: "search upper bound must be positive and finite".into(),
            });
        }
        Ok(())
    }
}

fn check_margin<S: Scalar>(k: S) -> Result<()> {
    if !k.is_finite() || k <= S::zero() {
        return Err(Error::InvalidMargin { k: k.as_f64() });
    }
    Ok(())
}

fn closed_form_report<S: Scalar>(
    strategies: Vec<S>,
    profits: Vec<S>,
    region: Region,
) -> Result<EquilibriumReport<S>> {
    let strategies = strategies
        .into_iter()
        .map(|x| Strategy::new(x.max(S::zero())))
        .collect::<Result<Vec<_>>>()?;
    Ok(EquilibriumReport {
        strategies,
        profits,
        region,
        source: SolutionSource::ClosedForm,
        residual: S::zero(),
    })
}

/// Classical Cournot equilibrium: `q* = k/3` each, profit `k^2/9` each.
/// Strategies in the report are the quantities themselves.
pub fn classical_nash<S: Scalar>(k: S) -> Result<EquilibriumReport<S>> {
    check_margin(k)?;
    let q = k / S::cst(3.0);
    let u = k * k / S::cst(9.0);
    closed_form_report(vec![q, q], vec![u, u], Region::NotApplicable)
}

/// Equilibrium of the expectation-value game:
///
/// ```text
/// x*^2 = 2k cos^2(gamma) / (1 + 2cos^2(gamma))
/// u    = k^2 cos^2(gamma) / (1 + 2cos^2(gamma))^2
/// ```
///
/// `u` increases from `k^2/9` at `gamma = 0` toward the best joint value
/// `k^2/8` as `gamma -> pi/4`.
pub fn nash_classical_apparatus<S: Scalar>(
    k: S,
    gamma: Coupling<S>,
) -> Result<EquilibriumReport<S>> {
    check_margin(k)?;
    let c = gamma.gamma().cos();
    let csq = c * c;
    let den = S::one() + S::cst(2.0) * csq;
    let w = S::cst(2.0) * k * csq / den;
    let u = k * k * csq / (den * den);
    let x = w.sqrt();
    closed_form_report(vec![x, x], vec![u, u], Region::NotApplicable)
}

/// Equilibrium of the photon-counting game in the infinite-limit market:
/// the expectation-value equilibrium with `k` replaced by `k - 1`, so `u`
/// runs from `(k-1)^2/9` to `(k-1)^2/8`. Requires `k >= 1`.
pub fn nash_quantum_apparatus<S: Scalar>(k: S, gamma: Coupling<S>) -> Result<EquilibriumReport<S>> {
    if !k.is_finite() || k < S::one() {
        return Err(Error::InvalidLimitMargin { k: k.as_f64() });
    }
    nash_classical_apparatus(k - S::one(), gamma)
}

/// Numerically located optimum of the finite-intercept counting game.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteOptimum<S> {
    pub x_opt: Strategy<S>,
    pub u_opt: S,
    /// Per-mode Poisson cutoff used at the optimum (modes are symmetric).
    pub mode_cutoff: usize,
    /// Certified omitted probability mass.
    pub tail_bound: S,
}

/// Maximize the symmetric per-firm counting payoff `u1(x, x)` over
/// `x in [0, sqrt(2k)]` by deterministic golden-section search.
///
/// The optimum lands between `(k-1)^2/8` and `k^2/8`; for symmetric
/// strategies the Poisson means are `x^2/2` regardless of `gamma`.
pub fn finite_a_optimum<S: Scalar>(
    market: &MarketParams<S>,
    gamma: Coupling<S>,
    trunc: &PoissonTruncation<S>,
) -> Result<FiniteOptimum<S>> {
    if market.is_infinite_limit() {
        return Err(Error::FiniteMarketRequired);
    }
    let x_hi = (S::cst(2.0) * market.margin()).sqrt();
    // probe the bracket end first so truncation failures surface before the
    // search (payoff evaluation inside the search must be infallible)
    let payoff = |x: S| -> Result<S> {
        let xs = Strategy::new(x)?;
        Ok(quantum_apparatus_payoffs_finite(xs, xs, gamma, market, trunc)?.u1)
    };
    payoff(x_hi)?;
    let (x_opt, u_opt) = oracle::golden_section_max(
        |x| payoff(x).expect("truncation certified over the bracket"),
        S::zero(),
        x_hi,
        S::cst(1e-10),
        S::cst(1e-12),
    );
    let lambda = x_opt * x_opt / S::cst(2.0);
    Ok(FiniteOptimum {
        x_opt: Strategy::new(x_opt)?,
        u_opt,
        mode_cutoff: trunc.mode_cutoff(lambda)?,
        tail_bound: trunc.tail_bound(),
    })
}

/// Classify the asymmetric-information game into region A or B.
///
/// With `gap = c_high - c1 = (1-theta) delta`, the boundary expression is
/// `max[(2 gap - k)/(k - gap), 0]`; region A holds when it is strictly below
/// `cos(2 gamma)`.
pub fn classify_region<S: Scalar>(
    info: &InfoStructure<S>,
    gamma: Coupling<S>,
) -> Result<RegionLabel<S>> {
    let k = info.margin();
    let gap = info.cost_gap();
    if k - gap <= S::zero() {
        // unreachable for a constructed InfoStructure (k - gap = a - c_high)
        return Err(Error::RegionUndefined {
            k: k.as_f64(),
            gap: gap.as_f64(),
        });
    }
    let boundary_value = ((S::cst(2.0) * gap - k) / (k - gap)).max(S::zero());
    let cos2 = (S::cst(2.0) * gamma.gamma()).cos();
    let region = if boundary_value < cos2 {
        Region::A
    } else {
        Region::B
    };
    Ok(RegionLabel {
        region,
        boundary_value,
    })
}

struct BayesSolution<S> {
    w1: S,
    w_high: S,
    w_low: S,
    label: RegionLabel<S>,
}

/// Squared equilibrium strategies of the Bayesian game.
///
/// Region A (all types interior):
///
/// ```text
/// x1*^2    = 2k cos^2(gamma) / (1 + 2cos^2(gamma))
/// x2T*^2   = (2 cos^2(gamma) (a - c_T) -/+ spread term) / (1 + 2cos^2(gamma))
/// ```
///
/// evaluated in the grouping above, which is algebraically identical to the
/// quotient with denominator `1 - 4cos^4(gamma)` but stays well conditioned
/// as `gamma -> pi/4`. Region B pins the high-cost type at zero.
fn bayes_strategy_squares<S: Scalar>(
    info: &InfoStructure<S>,
    gamma: Coupling<S>,
) -> Result<BayesSolution<S>> {
    let g = gamma.gamma();
    let csq = g.cos() * g.cos();
    let quartic_den = S::one() - S::cst(4.0) * csq * csq;
    if quartic_den.abs() < S::cst(1e-14) {
        return Err(Error::DegenerateCoupling {
            denominator: quartic_den.as_f64(),
        });
    }
    let label = classify_region(info, gamma)?;
    let two = S::cst(2.0);
    let (k, theta, delta) = (info.margin(), info.theta(), info.delta());
    let (k_high, k_low) = (info.margin_high(), info.margin_low());

    let (w1, w_high, w_low) = match label.region {
        Region::A => {
            let den = two * csq + S::one();
            let w1 = two * k * csq / den;
            let w_high = (two * csq * k_high - (S::one() - theta) * delta) / den;
            let w_low = (two * csq * k_low + theta * delta) / den;
            (w1, w_high.max(S::zero()), w_low)
        }
        _ => {
            let cos2 = (two * g).cos();
            let den = theta + cos2 * (two + cos2);
            let w1 = two * csq * (two * csq * k - (S::one() - theta) * k_low) / den;
            let w_low = two * csq * (two * csq * k_low - k) / den;
            (w1, S::zero(), w_low.max(S::zero()))
        }
    };
    Ok(BayesSolution {
        w1,
        w_high,
        w_low,
        label,
    })
}

fn bayes_profits_from<S: Scalar>(
    info: &InfoStructure<S>,
    gamma: Coupling<S>,
    sol: &BayesSolution<S>,
) -> PayoffPair<S> {
    let g = gamma.gamma();
    let (cg, sg) = (g.cos(), g.sin());
    let (csq, ssq) = (cg * cg, sg * sg);
    let (k, mh, ml) = (info.margin(), info.margin_high(), info.margin_low());
    let against_high = bayes_triplet_raw(sol.w1, sol.w_high, csq, ssq, k, mh, ml);
    let against_low = bayes_triplet_raw(sol.w1, sol.w_low, csq, ssq, k, mh, ml);
    let theta = info.theta();
    let one_m = S::one() - theta;
    PayoffPair {
        u1: theta * against_high.0 + one_m * against_low.0,
        u2: theta * against_high.1 + one_m * against_low.2,
    }
}

/// Unique Bayes-Nash equilibrium of the asymmetric-information game.
///
/// Strategies are reported as `[x1, x2_high, x2_low]`; profits are the
/// iterated-game averages over firm 2's type.
pub fn bayes_nash<S: Scalar>(
    info: &InfoStructure<S>,
    gamma: Coupling<S>,
) -> Result<EquilibriumReport<S>> {
    let sol = bayes_strategy_squares(info, gamma)?;
    let profits = bayes_profits_from(info, gamma, &sol);
    closed_form_report(
        vec![sol.w1.sqrt(), sol.w_high.sqrt(), sol.w_low.sqrt()],
        vec![profits.u1, profits.u2],
        sol.label.region,
    )
}

/// Average equilibrium profits of the iterated asymmetric-information game,
/// computed from the equilibrium strategies and the type-resolved payoffs
/// (definition first; the transcribed closed forms below serve as a
/// cross-check).
pub fn bayes_average_profits<S: Scalar>(
    info: &InfoStructure<S>,
    gamma: Coupling<S>,
) -> Result<PayoffPair<S>> {
    let sol = bayes_strategy_squares(info, gamma)?;
    Ok(bayes_profits_from(info, gamma, &sol))
}

/// Transcribed algebraic closed form of the region-A average profits:
///
/// ```text
/// U1 = {4[k^2 - w] + [4k^2 + w c2 (3 + c2)] c2} / (8 (2 + c2)^2)
/// U2 = U1 + w / 4,        w = delta^2 theta (1 - theta), c2 = cos(2 gamma)
/// ```
///
/// Kept as a cross-check of [`bayes_average_profits`].
pub fn region_a_average_profits_formula<S: Scalar>(
    info: &InfoStructure<S>,
    gamma: Coupling<S>,
) -> PayoffPair<S> {
    let k = info.margin();
    let w = info.delta() * info.delta() * info.theta() * (S::one() - info.theta());
    let c2 = (S::cst(2.0) * gamma.gamma()).cos();
    let four = S::cst(4.0);
    let den = S::cst(8.0) * (S::cst(2.0) + c2) * (S::cst(2.0) + c2);
    let u1 = (four * (k * k - w) + (four * k * k + w * c2 * (S::cst(3.0) + c2)) * c2) / den;
    PayoffPair {
        u1,
        u2: u1 + w / four,
    }
}

/// Transcribed algebraic closed form of the region-B average profits
/// (the long machine-generated expressions); kept as a cross-check of
/// [`bayes_average_profits`].
pub fn region_b_average_profits_formula<S: Scalar>(
    info: &InfoStructure<S>,
    gamma: Coupling<S>,
) -> PayoffPair<S> {
    let g = gamma.gamma();
    let (c2, c4) = ((S::cst(2.0) * g).cos(), (S::cst(4.0) * g).cos());
    let (csq, ssq) = (g.cos() * g.cos(), g.sin() * g.sin());
    let t = info.theta();
    let k = info.margin();
    let d = info.delta();
    let one = S::one();
    let two = S::cst(2.0);
    let three = S::cst(3.0);
    let four = S::cst(4.0);
    let five = S::cst(5.0);

    let den = four * (two * t + four * c2 + c4 + one) * (two * t + four * c2 + c4 + one);

    let u1_num = csq
        * (four
            * t
            * ((k + d * (t - one)) * t + k * c2)
            * (-two * d * t * t + two * k * t + two * d * t + k
                - two * (k * (t - three) + d * (t - one) * t) * c2
                + k * c4)
            * csq
            + (t - one)
                * (two * (k * (t - two) + d * t * (t + one)) * c2
                    + t * (-two * k + d + two * d * t + d * c4))
                * (two * (d * (t - one) * t + k * (t + two)) * c2
                    + t * (two * k - d + two * d * t - d * c4)));

    let u2_num = csq
        * (four
            * t
            * ((k + d * (t - one)) * t + k * c2)
            * (two * d * t * t + two * k * t + k
                - two * d
                - two * (k * (t - three) + d * (t * t - five * t + four)) * c2
                + (k + two * d * (t - one)) * c4)
            * ssq
            - (t - one)
                * (t * (two * k + d + two * d * t + d * c4)
                    - two * (k * (t - two) + d * (t - three) * t) * c2)
                * (t * (two * k + d + two * d * t + d * c4)
                    - two * (k * (t - two) + d * (t - three) * t) * c2));

    PayoffPair {
        u1: u1_num / den,
        u2: u2_num / den,
    }
}

/// Profit prefactor of the asymmetric-loss equilibrium:
///
/// ```text
/// xi = 2 k^2 cos^2(gamma) [(1+eta)^2 - (1-eta)^2 cos^2(2 gamma)] / D^2
/// D  = 1 + eta (6 + eta) + 4 eta cos(2 gamma) - (1-eta)^2 cos(4 gamma)
/// ```
pub fn loss_profit_prefactor<S: Scalar>(k: S, gamma: S, eta: S) -> S {
    let (c2, c4) = ((S::cst(2.0) * gamma).cos(), (S::cst(4.0) * gamma).cos());
    let csq = gamma.cos() * gamma.cos();
    let one_p = S::one() + eta;
    let one_m = S::one() - eta;
    let den = S::one() + eta * (S::cst(6.0) + eta) + S::cst(4.0) * eta * c2 - one_m * one_m * c4;
    S::cst(2.0) * k * k * csq * (one_p * one_p - one_m * one_m * c2 * c2) / (den * den)
}

/// Unique equilibrium when firm 2's mode suffers photon loss of
/// transmissivity `eta` before detection; `gamma` may be anywhere in
/// `[0, pi/4]` inclusive.
///
/// ```text
/// x1*^2 = 8 k eta cos^2(gamma) / D      x2*^2 = 8 k cos^2(gamma) / D
/// U1 = xi [1 + eta - (1-eta) cos(2 gamma)]
/// U2 = xi eta [1 + eta + (1-eta) cos(2 gamma)]
/// ```
///
/// Limits as `eta -> 0` (not an evaluable point; `eta = 0` is rejected):
///
/// | gamma          | U1      | U2      |
/// |----------------|---------|---------|
/// | `gamma = 0`    | `k^2/9` | `k^2/9` |
/// | `0 < gamma`    | `k^2/4` | `0`     |
///
/// At `gamma = 0` the profits are `k^2/9` independent of `eta`; at
/// `gamma = pi/4` the total `U1 + U2 = k^2/4` independent of `eta`.
pub fn asym_loss_nash<S: Scalar>(k: S, gamma: S, eta: S) -> Result<EquilibriumReport<S>> {
    check_margin(k)?;
    if !gamma.is_finite() || gamma < S::zero() || gamma > S::FRAC_PI_4() {
        return Err(Error::InvalidLossCoupling {
            gamma: gamma.as_f64(),
        });
    }
    if !eta.is_finite() || eta <= S::zero() || eta > S::one() {
        return Err(Error::InvalidTransmissivity { eta: eta.as_f64() });
    }
    let (c2, c4) = ((S::cst(2.0) * gamma).cos(), (S::cst(4.0) * gamma).cos());
    let csq = gamma.cos() * gamma.cos();
    let one_m = S::one() - eta;
    let den = S::one() + eta * (S::cst(6.0) + eta) + S::cst(4.0) * eta * c2 - one_m * one_m * c4;
    let w1 = S::cst(8.0) * k * eta * csq / den;
    let w2 = S::cst(8.0) * k * csq / den;
    let xi = loss_profit_prefactor(k, gamma, eta);
    let u1 = xi * (S::one() + eta - one_m * c2);
    let u2 = xi * eta * (S::one() + eta + one_m * c2);
    closed_form_report(vec![w1.sqrt(), w2.sqrt()], vec![u1, u2], Region::NotApplicable)
}

/// Pre-compensation for symmetric photon loss: play `x e^{kappa t / 2}` so
/// the decayed amplitudes reproduce the lossless game exactly.
pub fn loss_compensation<S: Scalar>(x: Strategy<S>, kappa_t: S) -> Result<Strategy<S>> {
    if !kappa_t.is_finite() || kappa_t < S::zero() {
        return Err(Error::InvalidDecay {
            kappa_t: kappa_t.as_f64(),
        });
    }
    Strategy::new(x.get() * (kappa_t / S::cst(2.0)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Region;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    #[test]
    fn classical_nash_examples() {
        let r = classical_nash(3.0_f64).unwrap();
        assert!((r.strategies[0].get() - 1.0).abs() < 1e-15);
        assert!((r.profits[0] - 1.0).abs() < 1e-15);
        let r = classical_nash(1.0_f64).unwrap();
        assert!((r.strategies[0].get() - 1.0 / 3.0).abs() < 1e-15);
        assert!((r.profits[0] - 1.0 / 9.0).abs() < 1e-15);
        assert!(classical_nash(0.0_f64).is_err());
        // the equilibrium payoff stays below the best joint value k^2/8
        for k in [0.3_f64, 1.0, 2.5, 7.0] {
            let r = classical_nash(k).unwrap();
            assert!(r.profits[0] < k * k / 8.0);
        }
    }

    #[test]
    fn apparatus_nash_examples() {
        let k = 3.0_f64;
        let r = nash_classical_apparatus(k, Coupling::zero()).unwrap();
        assert!((r.profits[0] - k * k / 9.0).abs() < 1e-14);

        let r = nash_classical_apparatus(k, Coupling::limit()).unwrap();
        assert!((r.profits[0] - k * k / 8.0).abs() < 1e-8 * k * k);

        let r = nash_classical_apparatus(k, Coupling::new(FRAC_PI_8).unwrap()).unwrap();
        assert!((r.profits[0] - 1.048_244_102_666_917).abs() < 1e-12);
        let c = FRAC_PI_8.cos().powi(2);
        assert!((r.strategies[0].get().powi(2) - 2.0 * k * c / (1.0 + 2.0 * c)).abs() < 1e-12);
    }

    #[test]
    fn quantum_nash_examples() {
        let r = nash_quantum_apparatus(5.0_f64, Coupling::zero()).unwrap();
        assert!((r.profits[0] - 16.0 / 9.0).abs() < 1e-14);
        let r = nash_quantum_apparatus(5.0_f64, Coupling::limit()).unwrap();
        assert!((r.profits[0] - 2.0).abs() < 1e-8);
        assert!(nash_quantum_apparatus(0.9_f64, Coupling::zero()).is_err());

        // margin-shift identity against the expectation-value game
        for (k, g) in [(5.0_f64, 0.3_f64), (2.0, 0.0), (8.0, 0.7)] {
            let q = nash_quantum_apparatus(k, Coupling::new(g).unwrap()).unwrap();
            let c = nash_classical_apparatus(k - 1.0, Coupling::new(g).unwrap()).unwrap();
            assert_eq!(q.profits, c.profits);
            assert_eq!(q.strategies, c.strategies);
        }
    }

    #[test]
    fn region_classification() {
        // boundary expression negative: region A for any coupling
        let info: InfoStructure<f64> = InfoStructure::from_margin(0.5, 0.5, 5.0).unwrap();
        let l = classify_region(&info, Coupling::zero()).unwrap();
        assert_eq!(l.region, Region::A);
        assert_eq!(l.boundary_value, 0.0);

        // boundary point delta/k = 4/3 at gamma = 0: value 1 = cos(0),
        // ties classify as B
        let info: InfoStructure<f64> = InfoStructure::from_margin(0.5, 4.0 / 3.0, 5.0).unwrap();
        let l = classify_region(&info, Coupling::zero()).unwrap();
        assert!((l.boundary_value - 1.0).abs() < 1e-12);
        assert_eq!(l.region, Region::B);

        // gamma = pi/8: boundary sits at delta/k = 1.2612039
        let g = Coupling::new(FRAC_PI_8).unwrap();
        let just_below: InfoStructure<f64> = InfoStructure::from_margin(0.5, 1.26120, 5.0).unwrap();
        let just_above: InfoStructure<f64> = InfoStructure::from_margin(0.5, 1.26121, 5.0).unwrap();
        assert_eq!(classify_region(&just_below, g).unwrap().region, Region::A);
        assert_eq!(classify_region(&just_above, g).unwrap().region, Region::B);
    }

    #[test]
    fn bayes_nash_degenerates_to_symmetric() {
        let k = 5.0_f64;
        let info: InfoStructure<f64> = InfoStructure::from_margin(0.5, 1e-9, k).unwrap();
        for g in [0.0, 0.3, 0.7] {
            let gamma = Coupling::new(g).unwrap();
            let r = bayes_nash(&info, gamma).unwrap();
            let sym = nash_classical_apparatus(k, gamma).unwrap();
            for s in &r.strategies {
                assert!((s.get() - sym.strategies[0].get()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn bayes_nash_region_b_pins_high_type() {
        let info: InfoStructure<f64> = InfoStructure::from_margin(0.5, 1.5, 5.0).unwrap();
        let r = bayes_nash(&info, Coupling::zero()).unwrap();
        assert_eq!(r.region, Region::B);
        assert_eq!(r.strategies[1].get(), 0.0);
        // firm 1 and the low type stay interior
        assert!(r.strategies[0].get() > 0.0);
        assert!(r.strategies[2].get() > 0.0);
    }

    #[test]
    fn bayes_region_a_first_order_conditions() {
        // stationarity of all three objectives at the interior equilibrium
        let info: InfoStructure<f64> = InfoStructure::from_margin(0.4, 0.7, 4.0).unwrap();
        let gamma = Coupling::new(0.35).unwrap();
        let sol = bayes_strategy_squares(&info, gamma).unwrap();
        assert_eq!(sol.label.region, Region::A);
        let csq = gamma.gamma().cos().powi(2);
        let (k, th) = (info.margin(), info.theta());
        let mix = th * sol.w_high + (1.0 - th) * sol.w_low;
        let foc1 = csq * k - csq * sol.w1 - 0.5 * mix;
        let foc_h = csq * info.margin_high() - csq * sol.w_high - 0.5 * sol.w1;
        let foc_l = csq * info.margin_low() - csq * sol.w_low - 0.5 * sol.w1;
        assert!(foc1.abs() < 1e-9, "firm 1 stationarity {foc1}");
        assert!(foc_h.abs() < 1e-9, "high type stationarity {foc_h}");
        assert!(foc_l.abs() < 1e-9, "low type stationarity {foc_l}");
    }

    #[test]
    fn bayes_rejects_degenerate_coupling() {
        let info: InfoStructure<f64> = InfoStructure::from_margin(0.5, 0.5, 5.0).unwrap();
        let gamma = Coupling::new(FRAC_PI_4 - 2e-16).unwrap();
        assert!(matches!(
            bayes_nash(&info, gamma),
            Err(Error::DegenerateCoupling { .. })
        ));
    }

    #[test]
    fn bayes_average_profit_identities() {
        // region A: U2 - U1 = delta^2 theta (1-theta) / 4
        for (theta, dk, g) in [(0.5, 0.8, 0.4), (0.3, 0.5, 0.1), (0.7, 0.9, 0.6)] {
            let info: InfoStructure<f64> = InfoStructure::from_margin(theta, dk, 5.0).unwrap();
            let gamma = Coupling::new(g).unwrap();
            assert_eq!(classify_region(&info, gamma).unwrap().region, Region::A);
            let p = bayes_average_profits(&info, gamma).unwrap();
            let w = info.delta().powi(2) * theta * (1.0 - theta);
            assert!((p.u2 - p.u1 - w / 4.0).abs() < 1e-12 * info.margin().powi(2));
        }

        // gamma = 0, theta = 1/2, delta/k < 4/3: firm 1 keeps k^2/9 exactly
        for dk in [0.2, 0.7, 1.0, 1.3] {
            let info: InfoStructure<f64> = InfoStructure::from_margin(0.5, dk, 5.0).unwrap();
            let p = bayes_average_profits(&info, Coupling::zero()).unwrap();
            assert!((p.u1 - 25.0 / 9.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bayes_profits_match_transcribed_closed_forms() {
        for (theta, dk, g) in [
            (0.5, 0.8, 0.4),
            (0.3, 0.6, 0.2),
            (0.5, 1.5, 0.3),
            (0.5, 1.8, 0.1),
            (0.7, 1.2, 0.5),
            (0.5, 1.5, 0.0),
        ] {
            let info: InfoStructure<f64> = InfoStructure::from_margin(theta, dk, 5.0).unwrap();
            let gamma = Coupling::new(g).unwrap();
            let label = classify_region(&info, gamma).unwrap();
            let p = bayes_average_profits(&info, gamma).unwrap();
            let f = match label.region {
                Region::A => region_a_average_profits_formula(&info, gamma),
                _ => region_b_average_profits_formula(&info, gamma),
            };
            let scale = info.margin().powi(2);
            assert!(
                (p.u1 - f.u1).abs() < 1e-12 * scale,
                "u1 mismatch in {:?}: {} vs {}",
                label.region,
                p.u1,
                f.u1
            );
            assert!((p.u2 - f.u2).abs() < 1e-12 * scale);
        }
    }

    #[test]
    fn asym_loss_examples() {
        let k = 3.0_f64;
        // eta = 1 reduces to the lossless equilibrium
        for g in [0.0, 0.3, FRAC_PI_8] {
            let r = asym_loss_nash(k, g, 1.0).unwrap();
            let sym = nash_classical_apparatus(k, Coupling::new(g).unwrap()).unwrap();
            for (a, b) in r.strategies.iter().zip(&sym.strategies) {
                assert!((a.get() - b.get()).abs() < 1e-14 * k);
            }
            assert!((r.profits[0] - sym.profits[0]).abs() < 1e-14 * k * k);
            assert!((r.profits[1] - sym.profits[1]).abs() < 1e-14 * k * k);
        }

        // gamma = 0: profits k^2/9 regardless of eta
        for eta in [0.05, 0.3, 0.8, 1.0] {
            let r = asym_loss_nash(k, 0.0, eta).unwrap();
            assert!((r.profits[0] - k * k / 9.0).abs() < 1e-12 * k * k);
            assert!((r.profits[1] - k * k / 9.0).abs() < 1e-12 * k * k);
        }

        // near-ideal cooperation at eta = 1/2: U1 -> k^2/6, U2 -> k^2/12
        let r = asym_loss_nash(k, FRAC_PI_4 - 1e-9, 0.5).unwrap();
        assert!((r.profits[0] - k * k / 6.0).abs() < 1e-6 * k * k);
        assert!((r.profits[1] - k * k / 12.0).abs() < 1e-6 * k * k);
        assert!((r.profits[0] + r.profits[1] - k * k / 4.0).abs() < 1e-8 * k * k);

        // gamma = pi/4 exactly is inside this game's domain
        let r = asym_loss_nash(k, FRAC_PI_4, 0.25).unwrap();
        assert!((r.profits[0] + r.profits[1] - k * k / 4.0).abs() < 1e-12 * k * k);

        assert!(asym_loss_nash(k, 0.3, 0.0).is_err());
        assert!(asym_loss_nash(k, FRAC_PI_4 + 1e-6, 0.5).is_err());
        assert!(asym_loss_nash(k, -0.1, 0.5).is_err());
    }

    #[test]
    fn loss_compensation_examples() {
        let x: Strategy<f64> = Strategy::new(1.7).unwrap();
        assert_eq!(loss_compensation(x, 0.0).unwrap(), x);
        let x: Strategy<f64> = Strategy::new(1.0).unwrap();
        let y = loss_compensation(x, 2.0 * std::f64::consts::LN_2).unwrap();
        assert!((y.get() - 2.0).abs() < 1e-15);
        assert!(loss_compensation(x, -0.5).is_err());
    }

    #[test]
    fn compensation_round_trip_invariance() {
        use crate::optics::{apply_loss, beam_splitter, encode_strategies};
        use crate::payoffs::classical_apparatus_payoffs;

        let (k, g, kappa_t) = (3.0_f64, FRAC_PI_8, 0.7_f64);
        let gamma = Coupling::new(g).unwrap();
        let (x1, x2) = (Strategy::new(1.1).unwrap(), Strategy::new(0.8).unwrap());

        let reference = classical_apparatus_payoffs(x1, x2, gamma, k);

        let eta = (-kappa_t as f64).exp();
        let c1 = loss_compensation(x1, kappa_t).unwrap();
        let c2 = loss_compensation(x2, kappa_t).unwrap();
        let decayed = apply_loss(encode_strategies(c1, c2), eta, eta).unwrap();
        let (n1, n2) = beam_splitter(decayed, gamma).photon_numbers();
        let u1 = n1 * (k - n1 - n2);
        let u2 = n2 * (k - n1 - n2);
        assert!((u1 - reference.u1).abs() < 1e-12);
        assert!((u2 - reference.u2).abs() < 1e-12);
    }

    #[test]
    fn finite_optimum_values() {
        let trunc = PoissonTruncation::default();
        let gamma = Coupling::limit();

        let m: MarketParams<f64> = MarketParams::new(6.0, 1.0).unwrap();
        let opt = finite_a_optimum(&m, gamma, &trunc).unwrap();
        assert!((opt.u_opt - 2.02487).abs() < 1e-3, "u_opt {}", opt.u_opt);
        // bracketed between (k-1)^2/8 and k^2/8
        assert!(opt.u_opt > 2.0 && opt.u_opt < 25.0 / 8.0);

        let m: MarketParams<f64> = MarketParams::new(10.0, 5.0).unwrap();
        let opt = finite_a_optimum(&m, gamma, &trunc).unwrap();
        assert!((opt.u_opt - 2.00006).abs() < 1e-4, "u_opt {}", opt.u_opt);

        let lim: MarketParams<f64> = MarketParams::infinite_limit(5.0).unwrap();
        assert!(finite_a_optimum(&lim, gamma, &trunc).is_err());
    }
}
