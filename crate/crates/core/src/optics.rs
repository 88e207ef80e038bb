//! Coherent-state amplitude arithmetic.
//!
//! The game state is always a direct product of two coherent states, so two
//! complex amplitudes describe it exactly: strategy encoding, the
//! beam-splitter transform, photon loss and photon-counting statistics all
//! act at the amplitude level. No density matrices anywhere.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::{Coupling, Strategy};
use crate::scalar::Scalar;

/// Complex amplitudes of the two optical modes; `|alpha_i|^2` is the
/// expected photon number of mode `i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeAmplitudes<S> {
    pub alpha1: Complex<S>,
    pub alpha2: Complex<S>,
}

impl<S: Scalar> ModeAmplitudes<S> {
    /// Expected photon numbers `(|alpha1|^2, |alpha2|^2)`.
    pub fn photon_numbers(&self) -> (S, S) {
        (self.alpha1.norm_sqr(), self.alpha2.norm_sqr())
    }
}

/// Encode the firms' moves as coherent amplitudes `alpha_i = (sqrt2/2) x_i`.
pub fn encode_strategies<S: Scalar>(x1: Strategy<S>, x2: Strategy<S>) -> ModeAmplitudes<S> {
    let half_sqrt2 = S::cst(2.0).sqrt() / S::cst(2.0);
    ModeAmplitudes {
        alpha1: Complex::new(half_sqrt2 * x1.get(), S::zero()),
        alpha2: Complex::new(half_sqrt2 * x2.get(), S::zero()),
    }
}

/// Passive beam-splitter coupling of the two modes:
///
/// ```text
/// out1 = alpha1 cos(gamma) + i alpha2 sin(gamma)
/// out2 = alpha2 cos(gamma) + i alpha1 sin(gamma)
/// ```
///
/// Total photon number is conserved for every `gamma`.
pub fn beam_splitter<S: Scalar>(amps: ModeAmplitudes<S>, gamma: Coupling<S>) -> ModeAmplitudes<S> {
    let (cg, sg) = (gamma.gamma().cos(), gamma.gamma().sin());
    let rot = |z: Complex<S>, s: S| Complex::new(-z.im * s, z.re * s); // i * z * s
    ModeAmplitudes {
        alpha1: amps.alpha1 * cg + rot(amps.alpha2, sg),
        alpha2: amps.alpha2 * cg + rot(amps.alpha1, sg),
    }
}

/// Photon-loss channel: scales `alpha_i` by `sqrt(eta_i)`, `eta_i` in
/// `(0, 1]`. Symmetric loss `eta1 = eta2 = e^{-kappa t}` reproduces the
/// amplitude decay `x_i e^{-kappa t / 2}`.
pub fn apply_loss<S: Scalar>(
    amps: ModeAmplitudes<S>,
    eta1: S,
    eta2: S,
) -> Result<ModeAmplitudes<S>> {
    for eta in [eta1, eta2] {
        if !eta.is_finite() || eta <= S::zero() || eta > S::one() {
            return Err(Error::InvalidTransmissivity { eta: eta.as_f64() });
        }
    }
    Ok(ModeAmplitudes {
        alpha1: amps.alpha1 * eta1.sqrt(),
        alpha2: amps.alpha2 * eta2.sqrt(),
    })
}

/// Expected photon numbers after encoding and the beam splitter:
///
/// ```text
/// n1 = (x1^2 cos^2(gamma) + x2^2 sin^2(gamma)) / 2
/// n2 = (x2^2 cos^2(gamma) + x1^2 sin^2(gamma)) / 2
/// ```
///
/// These are the firms' measured quantities under the expectation-value
/// (power-meter) apparatus, and the Poisson means under photon counting.
pub fn expected_quantities<S: Scalar>(
    x1: Strategy<S>,
    x2: Strategy<S>,
    gamma: Coupling<S>,
) -> (S, S) {
    let (w1, w2) = (x1.get() * x1.get(), x2.get() * x2.get());
    let (cg, sg) = (gamma.gamma().cos(), gamma.gamma().sin());
    let (c2, s2) = (cg * cg, sg * sg);
    let half = S::cst(0.5);
    (half * (w1 * c2 + w2 * s2), half * (w2 * c2 + w1 * s2))
}

/// Quantities when firm 2's mode passes a loss channel of transmissivity
/// `eta2` before detection: `n1` unchanged, `n2` scaled by `eta2`.
pub fn lossy_quantities<S: Scalar>(
    x1: Strategy<S>,
    x2: Strategy<S>,
    gamma: Coupling<S>,
    eta2: S,
) -> Result<(S, S)> {
    if !eta2.is_finite() || eta2 <= S::zero() || eta2 > S::one() {
        return Err(Error::InvalidTransmissivity { eta: eta2.as_f64() });
    }
    let (n1, n2) = expected_quantities(x1, x2, gamma);
    Ok((n1, eta2 * n2))
}

/// Probability of counting `(m1, m2)` photons: the product of two Poisson
/// distributions with means from [`expected_quantities`]. The joint
/// normalization `e^{-(x1^2+x2^2)/2}` factorizes exactly because
/// `n1 + n2 = (x1^2 + x2^2)/2`.
pub fn poisson_joint_pmf<S: Scalar>(
    m1: usize,
    m2: usize,
    x1: Strategy<S>,
    x2: Strategy<S>,
    gamma: Coupling<S>,
) -> S {
    let (l1, l2) = expected_quantities(x1, x2, gamma);
    poisson_pmf(m1, l1) * poisson_pmf(m2, l2)
}

/// `lambda^m e^{-lambda} / m!` by upward recurrence (no factorial overflow).
fn poisson_pmf<S: Scalar>(m: usize, lambda: S) -> S {
    if lambda == S::zero() {
        return if m == 0 { S::one() } else { S::zero() };
    }
    let mut p = (-lambda).exp();
    for j in 1..=m {
        p = p * lambda / S::from_usize(j).unwrap();
    }
    p
}

/// Certified truncation of the infinite photon-counting sums.
///
/// The per-mode cutoff is the smallest count where the Poisson upper-tail
/// (Chernoff) bound drops below `tail_bound / 2`, so the omitted joint mass
/// is at most `tail_bound`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonTruncation<S> {
    tail_bound: S,
    ceiling: usize,
}

/// Default certified omitted probability mass.
pub const DEFAULT_TAIL_BOUND: f64 = 1e-12;
/// Default per-mode cutoff ceiling.
pub const DEFAULT_CUTOFF_CEILING: usize = 4096;

impl<S: Scalar> Default for PoissonTruncation<S> {
    fn default() -> Self {
        Self {
            tail_bound: S::cst(DEFAULT_TAIL_BOUND),
            ceiling: DEFAULT_CUTOFF_CEILING,
        }
    }
}

impl<S: Scalar> PoissonTruncation<S> {
    pub fn new(tail_bound: S) -> Result<Self> {
        if !tail_bound.is_finite() || tail_bound <= S::zero() || tail_bound >= S::one() {
            return Err(Error::InvalidTailBound {
                tail_bound: tail_bound.as_f64(),
            });
        }
        Ok(Self {
            tail_bound,
            ceiling: DEFAULT_CUTOFF_CEILING,
        })
    }

    pub fn with_ceiling(mut self, ceiling: usize) -> Self {
        self.ceiling = ceiling.max(1);
        self
    }

    pub fn tail_bound(&self) -> S {
        self.tail_bound
    }

    pub fn ceiling(&self) -> usize {
        self.ceiling
    }

    /// Smallest cutoff `M` with `P(X > M) <= tail_bound / 2` for a Poisson
    /// mean `lambda`, certified by the Chernoff bound
    /// `ln P(X >= m) <= -lambda + m (1 + ln(lambda/m))` for `m > lambda`.
    pub fn mode_cutoff(&self, lambda: S) -> Result<usize> {
        debug_assert!(lambda >= S::zero());
        if lambda == S::zero() {
            return Ok(0);
        }
        let ln_half_tail = (self.tail_bound / S::cst(2.0)).ln();
        let mut m = lambda.floor().to_usize().unwrap_or(usize::MAX).saturating_add(1);
        while m <= self.ceiling + 1 {
            let mf = S::from_usize(m).unwrap();
            let ln_bound = -lambda + mf * (S::one() + (lambda / mf).ln());
            if ln_bound <= ln_half_tail {
                return Ok(m - 1);
            }
            m += 1;
        }
        Err(Error::TruncationOverflow {
            lambda: lambda.as_f64(),
            tail_bound: self.tail_bound.as_f64(),
            ceiling: self.ceiling,
        })
    }
}

/// Poisson weights `p(0..=cutoff; lambda)` by upward recurrence.
fn poisson_weights<S: Scalar>(lambda: S, cutoff: usize) -> Vec<S> {
    let mut w = Vec::with_capacity(cutoff + 1);
    w.push((-lambda).exp());
    for j in 1..=cutoff {
        let prev = w[j - 1];
        w.push(prev * lambda / S::from_usize(j).unwrap());
    }
    w
}

/// Deterministic pairwise (tree) summation.
fn pairwise_sum<S: Scalar>(xs: &[S]) -> S {
    match xs.len() {
        0 => S::zero(),
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
        }
    }
}

/// Average of a payoff kernel `f(m1, m2)` over the joint photon-counting
/// distribution, truncated to the certified grid.
///
/// Deterministic for a fixed truncation: the grid is summed in a fixed
/// pairwise order.
pub fn truncated_expectation<S, F>(
    kernel: F,
    x1: Strategy<S>,
    x2: Strategy<S>,
    gamma: Coupling<S>,
    trunc: &PoissonTruncation<S>,
) -> Result<S>
where
    S: Scalar,
    F: Fn(usize, usize) -> S,
{
    let (l1, l2) = expected_quantities(x1, x2, gamma);
    let (cut1, cut2) = (trunc.mode_cutoff(l1)?, trunc.mode_cutoff(l2)?);
    let w1 = poisson_weights(l1, cut1);
    let w2 = poisson_weights(l2, cut2);

    let mut inner = vec![S::zero(); cut2 + 1];
    let mut rows = Vec::with_capacity(cut1 + 1);
    for (m1, &p1) in w1.iter().enumerate() {
        for (m2, cell) in inner.iter_mut().enumerate() {
            *cell = w2[m2] * kernel(m1, m2);
        }
        rows.push(p1 * pairwise_sum(&inner));
    }
    Ok(pairwise_sum(&rows))
}

/// Probability mass retained by the truncation grid for these inputs;
/// lies in `[1 - tail_bound, 1]`.
pub fn retained_mass<S: Scalar>(
    x1: Strategy<S>,
    x2: Strategy<S>,
    gamma: Coupling<S>,
    trunc: &PoissonTruncation<S>,
) -> Result<S> {
    truncated_expectation(|_, _| S::one(), x1, x2, gamma, trunc)
}
