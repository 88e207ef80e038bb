//! Independent numerical verification of the closed-form equilibria by
//! iterated best response.
//!
//! Each role in turn maximizes its own objective over `[0, x_hi]` by
//! golden-section search until the profile stops moving (or no role can
//! improve its value beyond tolerance). Deterministic: fixed role order,
//! fixed bracket, fixed line-search schedule.

use crate::error::{Error, Result};
use crate::model::{
    Coupling, EquilibriumReport, InfoStructure, MarketParams, Region, SolutionSource, Strategy,
};
use crate::payoffs::{apparatus_pair_raw, bayes_triplet_raw, classical_payoffs, lossy_pair_raw};
use crate::scalar::Scalar;

use super::{classify_region, OracleConfig};

const MAX_ROLES: usize = 3;
/// Grid resolution of the final no-deviation scan.
pub const RESIDUAL_SCAN_POINTS: usize = 2048;

/// Payoff-functional bundle the oracle can solve.
///
/// Strategies are one scalar per role; the Bayesian game has three roles
/// (firm 1 and the two cost types of firm 2), every other game has two.
#[derive(Debug, Clone)]
pub enum OracleGame<S> {
    /// Classical Cournot in quantities.
    Classical { market: MarketParams<S> },
    /// Expectation-value apparatus at margin `k`.
    ClassicalApparatus { k: S, gamma: Coupling<S> },
    /// Photon counting in the infinite-limit market (`k >= 1`).
    QuantumLimit { k: S, gamma: Coupling<S> },
    /// Asymmetric information; roles `[x1, x2_high, x2_low]`.
    Bayes {
        info: InfoStructure<S>,
        gamma: Coupling<S>,
    },
    /// Firm 2 behind a loss channel; `gamma` in `[0, pi/4]`.
    AsymLoss { k: S, gamma: S, eta: S },
}

impl<S: Scalar> OracleGame<S> {
    pub fn role_count(&self) -> usize {
        match self {
            OracleGame::Bayes { .. } => 3,
            _ => 2,
        }
    }

    /// Margin scale of the game (sets default search bounds).
    pub fn margin(&self) -> S {
        match self {
            OracleGame::Classical { market } => market.margin(),
            OracleGame::ClassicalApparatus { k, .. } => *k,
            OracleGame::QuantumLimit { k, .. } => *k,
            OracleGame::Bayes { info, .. } => info.margin(),
            OracleGame::AsymLoss { k, .. } => *k,
        }
    }

    /// Objective that `role` maximizes over its own strategy, the rest of
    /// the profile held fixed.
    pub fn objective(&self, role: usize, profile: &[S]) -> S {
        let sq = |x: S| x * x;
        match self {
            OracleGame::Classical { market } => {
                let p = classical_payoffs(profile[0], profile[1], market);
                if role == 0 {
                    p.u1
                } else {
                    p.u2
                }
            }
            OracleGame::ClassicalApparatus { k, gamma } => {
                let (cg, sg) = (gamma.gamma().cos(), gamma.gamma().sin());
                let (u1, u2) =
                    apparatus_pair_raw(sq(profile[0]), sq(profile[1]), cg * cg, sg * sg, *k);
                if role == 0 {
                    u1
                } else {
                    u2
                }
            }
            OracleGame::QuantumLimit { k, gamma } => {
                let (cg, sg) = (gamma.gamma().cos(), gamma.gamma().sin());
                let (u1, u2) = apparatus_pair_raw(
                    sq(profile[0]),
                    sq(profile[1]),
                    cg * cg,
                    sg * sg,
                    *k - S::one(),
                );
                if role == 0 {
                    u1
                } else {
                    u2
                }
            }
            OracleGame::Bayes { info, gamma } => {
                let (cg, sg) = (gamma.gamma().cos(), gamma.gamma().sin());
                let (csq, ssq) = (cg * cg, sg * sg);
                let (k, mh, ml) = (info.margin(), info.margin_high(), info.margin_low());
                match role {
                    // firm 1 maximizes its type-averaged profit
                    0 => {
                        let vs_high =
                            bayes_triplet_raw(sq(profile[0]), sq(profile[1]), csq, ssq, k, mh, ml);
                        let vs_low =
                            bayes_triplet_raw(sq(profile[0]), sq(profile[2]), csq, ssq, k, mh, ml);
                        info.theta() * vs_high.0 + (S::one() - info.theta()) * vs_low.0
                    }
                    1 => {
                        bayes_triplet_raw(sq(profile[0]), sq(profile[1]), csq, ssq, k, mh, ml).1
                    }
                    _ => bayes_triplet_raw(sq(profile[0]), sq(profile[2]), csq, ssq, k, mh, ml).2,
                }
            }
            OracleGame::AsymLoss { k, gamma, eta } => {
                let (cg, sg) = (gamma.cos(), gamma.sin());
                let (u1, u2) =
                    lossy_pair_raw(sq(profile[0]), sq(profile[1]), cg * cg, sg * sg, *eta, *k);
                if role == 0 {
                    u1
                } else {
                    u2
                }
            }
        }
    }

    fn objective_replacing(&self, role: usize, profile: &[S], x: S) -> S {
        let mut buf = [S::zero(); MAX_ROLES];
        let n = self.role_count();
        buf[..n].copy_from_slice(profile);
        buf[role] = x;
        self.objective(role, &buf[..n])
    }

    /// The two firms' profits at a profile (type-averaged for the Bayesian
    /// game).
    fn firm_profits(&self, profile: &[S]) -> (S, S) {
        match self {
            OracleGame::Bayes { info, gamma } => {
                let sq = |x: S| x * x;
                let (cg, sg) = (gamma.gamma().cos(), gamma.gamma().sin());
                let (csq, ssq) = (cg * cg, sg * sg);
                let (k, mh, ml) = (info.margin(), info.margin_high(), info.margin_low());
                let vs_high = bayes_triplet_raw(sq(profile[0]), sq(profile[1]), csq, ssq, k, mh, ml);
                let vs_low = bayes_triplet_raw(sq(profile[0]), sq(profile[2]), csq, ssq, k, mh, ml);
                let th = info.theta();
                (
                    th * vs_high.0 + (S::one() - th) * vs_low.0,
                    th * vs_high.1 + (S::one() - th) * vs_low.2,
                )
            }
            _ => (self.objective(0, profile), self.objective(1, profile)),
        }
    }

    fn region(&self) -> Region {
        match self {
            OracleGame::Bayes { info, gamma } => classify_region(info, *gamma)
                .map(|l| l.region)
                .unwrap_or(Region::NotApplicable),
            _ => Region::NotApplicable,
        }
    }

    fn default_start(&self) -> Vec<S> {
        let k = self.margin();
        let x = match self {
            OracleGame::Classical { .. } => k / S::cst(3.0),
            _ => (S::cst(2.0) * k / S::cst(3.0)).sqrt(),
        };
        vec![x; self.role_count()]
    }
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`, finished by
/// one parabolic vertex fit.
///
/// Plain golden section is noise-limited near a flat quadratic maximum
/// (comparisons of nearly equal values), so the bracket is only narrowed to
/// a fit window of width `4h` with `h = 1e-6 (hi - lo)`; the vertex of the
/// parabola through `m - h, m, m + h` then locates the maximizer far below
/// the comparison noise floor. `value_tol` is the smallest second
/// difference treated as genuine curvature; below it the search falls back
/// to pure golden section down to `tol_x` (which also handles boundary
/// maxima). Returns `(x_max, f_max)`; deterministic for fixed inputs.
pub(crate) fn golden_section_max<S: Scalar>(
    f: impl Fn(S) -> S,
    lo0: S,
    hi0: S,
    tol_x: S,
    value_tol: S,
) -> (S, S) {
    let inv_phi = S::cst(0.618_033_988_749_894_8);
    let two = S::cst(2.0);
    let span = hi0 - lo0;
    if !(span > S::zero()) {
        return (lo0, f(lo0));
    }
    let h = span * S::cst(1e-6);
    let fit_width = S::cst(4.0) * h;

    let (mut lo, mut hi) = (lo0, hi0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut shrink = |lo: &mut S, hi: &mut S, target: S, evals: &mut usize| {
        while *hi - *lo > target && *evals < 400 {
            if f1 >= f2 {
                *hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = *hi - inv_phi * (*hi - *lo);
                f1 = f(x1);
            } else {
                *lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = *lo + inv_phi * (*hi - *lo);
                f2 = f(x2);
            }
            *evals += 1;
        }
    };

    let mut evals = 0usize;
    shrink(&mut lo, &mut hi, fit_width.max(tol_x), &mut evals);

    if fit_width > tol_x {
        let m = ((lo + hi) / two).max(lo0 + h).min(hi0 - h);
        let (fa, fm, fb) = (f(m - h), f(m), f(m + h));
        let curvature = fa - two * fm + fb;
        if curvature < -value_tol {
            let vertex = m + h * (fa - fb) / (two * curvature);
            // the true maximizer lies in the bracket; a vertex far outside
            // the fit window means the fit is not trustworthy
            if vertex >= m - two * h && vertex <= m + two * h {
                let x = vertex.max(lo0).min(hi0);
                let fx = f(x);
                if fx >= fm {
                    return (x, fx);
                }
            }
            return (m, fm);
        }
        // flat or boundary-hugging: resolve by golden section alone
        shrink(&mut lo, &mut hi, tol_x, &mut evals);
    }
    let mid = (lo + hi) / two;
    (mid, f(mid))
}

/// Largest unilateral payoff improvement any role can find on a uniform
/// `grid`-point scan of its own strategy over `[0, x_hi]`; zero at an
/// equilibrium (up to grid resolution).
pub fn deviation_residual<S: Scalar>(
    game: &OracleGame<S>,
    profile: &[S],
    x_hi: S,
    grid: usize,
) -> S {
    let step = x_hi / S::from_usize(grid - 1).unwrap();
    let mut worst = S::zero();
    for role in 0..game.role_count() {
        let current = game.objective(role, profile);
        for j in 0..grid {
            let x = step * S::from_usize(j).unwrap();
            let gain = game.objective_replacing(role, profile, x) - current;
            if gain > worst {
                worst = gain;
            }
        }
    }
    worst
}

/// Iterated best response from the default starting profile.
pub fn best_response_oracle<S: Scalar>(
    game: &OracleGame<S>,
    config: &OracleConfig<S>,
) -> Result<EquilibriumReport<S>> {
    let start = game.default_start();
    best_response_oracle_from(game, config, &start)
}

/// Iterated best response from an explicit starting profile.
pub fn best_response_oracle_from<S: Scalar>(
    game: &OracleGame<S>,
    config: &OracleConfig<S>,
    start: &[S],
) -> Result<EquilibriumReport<S>> {
    config.validate()?;
    let roles = game.role_count();
    assert_eq!(start.len(), roles, "starting profile has wrong arity");

    let line_tol = config.tol_x * S::cst(1e-2);
    let mut profile: Vec<S> = start.iter().map(|x| x.max(S::zero())).collect();
    let mut last_step = S::infinity();
    let mut converged = false;

    for _ in 0..config.max_iters {
        let mut step = S::zero();
        for role in 0..roles {
            let current = game.objective(role, &profile);
            let (x_best, f_best) = golden_section_max(
                |x| game.objective_replacing(role, &profile, x),
                S::zero(),
                config.x_hi,
                line_tol,
                config.tol_u,
            );
            // only accept strict improvements; a role already at its best
            // response stays put, so an equilibrium profile is a fixed point
            if f_best > current {
                let delta = (x_best - profile[role]).abs();
                if delta > step {
                    step = delta;
                }
                profile[role] = x_best;
            }
        }
        last_step = step;
        if step < config.tol_x {
            converged = true;
            break;
        }
    }

    let residual = deviation_residual(game, &profile, config.x_hi, RESIDUAL_SCAN_POINTS);
    if !converged {
        return Err(Error::NonConvergence {
            iterations: config.max_iters,
            last_step: last_step.as_f64(),
            residual: residual.as_f64(),
            strategies: profile.iter().map(|x| x.as_f64()).collect(),
        });
    }

    let (u1, u2) = game.firm_profits(&profile);
    let strategies = profile
        .into_iter()
        .map(|x| Strategy::new(x.max(S::zero())))
        .collect::<Result<Vec<_>>>()?;
    Ok(EquilibriumReport {
        strategies,
        profits: vec![u1, u2],
        region: game.region(),
        source: SolutionSource::Oracle,
        residual,
    })
}
