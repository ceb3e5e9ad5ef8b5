//! Detector imperfections for the heralding measurement: dark counts and
//! lost photon counts, the six conditional outcome states they admit, and
//! the resulting fidelity bounds for the heralded output.
//!
//! Both detectors (idler input D1, idler output D2) click for one photon.
//! A dark count (probability `d` per detector) makes a click with no
//! photon; a loss (probability `l`) makes a two-photon event register as
//! one. Conditioned on both detectors clicking, the actual photon numbers
//! `(j, k)` of the idler input and output can be any of
//! `{0,1} x {0,1,2}`, with detector-story weights
//!
//! ```text
//!     (0,0): d^2      (0,1): d(1-d-l)      (0,2): d l
//!     (1,0): (1-d)d   (1,1): (1-d)(1-d-l)  (1,2): (1-d) l
//! ```
//!
//! The first four weights sum to `(1-d-l+dl) + d - d^2 ... = 1 - l` and
//! ground the fidelity lower bound; adding the two-photon outcomes with
//! weights `d l` and `(1-d) l` — the unique completion preserving the
//! factorized per-detector structure — brings the total to exactly 1.
//! This completion is a modeling assumption: the heralding statistics fix
//! the first four weights but say nothing about how loss splits between
//! the `j = 0` and `j = 1` branches.
//!
//! The weights deliberately exclude the physical generation probabilities
//! `P(k out | j in)`; they describe detector stories conditioned on the
//! double click, not the full joint distribution. Loss is modeled per
//! detection event, not per photon.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{inner_product, StateVec, Truncation};
use crate::herald::{closed_output, two_state_coefficients};
use crate::opa::{herald, pipeline_truncation, AmplifierParams};

/// Dark-count and loss probabilities of the heralding detectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorModel {
    dark: f64,
    loss: f64,
}

impl ErrorModel {
    /// Validate `d in [0, 0.5]`, `l in [0, 1)`, `d + l <= 1` (so the
    /// correct-detection weight `1 - d - l` stays nonnegative).
    pub fn new(dark: f64, loss: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&dark) || !dark.is_finite() {
            return Err(Error::InvalidModel(format!(
                "dark-count probability must lie in [0, 0.5], got {dark}"
            )));
        }
        if !(0.0..1.0).contains(&loss) {
            return Err(Error::InvalidModel(format!(
                "loss probability must lie in [0, 1), got {loss}"
            )));
        }
        if dark + loss > 1.0 {
            return Err(Error::InvalidModel(format!(
                "dark + loss must not exceed 1, got {}",
                dark + loss
            )));
        }
        Ok(Self { dark, loss })
    }

    pub fn dark(&self) -> f64 {
        self.dark
    }

    pub fn loss(&self) -> f64 {
        self.loss
    }

    /// Detector-story weight of the actual photon numbers `(j, k)`.
    pub fn weight(&self, j: usize, k: usize) -> f64 {
        let (d, l) = (self.dark, self.loss);
        let input = if j == 0 { d } else { 1.0 - d };
        let output = match k {
            0 => d,
            1 => 1.0 - d - l,
            _ => l,
        };
        input * output
    }
}

/// All six detector outcomes in the fixed order
/// `(0,0), (0,1), (0,2), (1,0), (1,1), (1,2)`.
pub const OUTCOMES: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)];

/// One detector outcome: actual idler photon numbers, its weight under the
/// model, the conditional signal state, and that state's squared overlap
/// with the ideal heralded output.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub idler_in: usize,
    pub idler_out: usize,
    pub weight: f64,
    pub overlap_sq: f64,
    pub state: StateVec,
}

/// The six outcomes of a model at fixed `(alpha, g)`.
#[derive(Debug, Clone)]
pub struct OutcomeTable {
    pub outcomes: Vec<Outcome>,
}

/// Squared overlaps `|<phi_jk|psi>|^2` of the six outcome states with the
/// ideal heralded output `psi`.
///
/// `q11` is exactly 1 by construction — the `(1,1)` state *is* `psi` —
/// which keeps the `d = 0` limiting values of the fidelity bounds exact.
/// `q00`, `q10`, `q01` and `q02` are closed forms in the two-state
/// coefficients; `q12` is computed through the brute-force heralding
/// pipeline. At unit gain, outcomes with `k != j` cannot occur and their
/// overlaps are set to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeOverlaps {
    pub q00: f64,
    pub q01: f64,
    pub q02: f64,
    pub q10: f64,
    pub q11: f64,
    pub q12: f64,
}

/// Conditional signal state for actual idler photon numbers `(j, k)`,
/// computed through the heralding pipeline.
pub fn outcome_state(
    j: usize,
    k: usize,
    alpha: C64,
    g: f64,
    trunc: Truncation,
) -> Result<StateVec> {
    if j > 1 || k > 2 {
        return Err(Error::InvalidModel(format!(
            "detector outcome ({j}, {k}) outside the modeled range {{0,1}} x {{0,1,2}}"
        )));
    }
    let params = AmplifierParams::new(g)?;
    Ok(herald(&params, alpha, j, k, trunc)?.0)
}

/// Closed-form outcome overlaps (`q12` through the pipeline).
pub fn outcome_overlaps(alpha: C64, g: f64, trunc: Truncation) -> Result<OutcomeOverlaps> {
    let (c0, c1, _, _, beta) = two_state_coefficients(alpha, g)?;
    if g == 1.0 {
        // The amplifier is off: the idler output equals the input, so only
        // the k = j outcomes occur, and both leave the signal in |alpha>.
        return Ok(OutcomeOverlaps {
            q00: 1.0,
            q01: 0.0,
            q02: 0.0,
            q10: 0.0,
            q11: 1.0,
            q12: 0.0,
        });
    }
    let b2 = beta.norm_sqr();
    // <beta|psi> = C0;  <beta|a|psi> = C1 + beta C0;
    // <beta|a^2|psi> = beta^2 C0 + 2 beta C1.
    let q00 = c0.norm_sqr();
    let q01 = (c1 + beta * c0).norm_sqr() / (1.0 + b2);
    let q02 = (beta * beta * c0 + 2.0 * beta * c1).norm_sqr() / (b2 * b2 + 4.0 * b2 + 2.0);
    let params = AmplifierParams::new(g)?;
    let ideal = closed_output(alpha, g, trunc)?.psi;
    let phi12 = herald(&params, alpha, 1, 2, trunc)?.0;
    let q12 = inner_product(&phi12, &ideal)?.norm_sqr();
    Ok(OutcomeOverlaps {
        q00,
        q01,
        q02,
        q10: q00,
        q11: 1.0,
        q12,
    })
}

/// Fidelity lower bound from the four zero/one-photon outcomes:
///
/// ```text
///     F_lower = d^2 q00 + d(1-d-l) q01 + (1-d)d q10 + (1-d)(1-d-l) q11.
/// ```
///
/// The weights sum to `1 - l`; the bound is exact when the two-photon
/// outcomes do not overlap the ideal output. `F_lower(0, 0) = 1` and
/// `F_lower(0, l) = 1 - l` hold exactly.
pub fn fidelity_lower_bound_with(q: &OutcomeOverlaps, model: &ErrorModel) -> f64 {
    let (d, l) = (model.dark(), model.loss());
    d * d * q.q00
        + d * (1.0 - d - l) * q.q01
        + (1.0 - d) * d * q.q10
        + (1.0 - d) * (1.0 - d - l) * q.q11
}

/// Full-model fidelity: the lower bound plus the two-photon outcomes,
///
/// ```text
///     F_full = F_lower + d l q02 + (1-d) l q12,
/// ```
///
/// whose six weights sum to exactly 1. Always at least `F_lower`, and
/// equal to it when `l = 0`.
pub fn fidelity_full_with(q: &OutcomeOverlaps, model: &ErrorModel) -> f64 {
    let (d, l) = (model.dark(), model.loss());
    fidelity_lower_bound_with(q, model) + d * l * q.q02 + (1.0 - d) * l * q.q12
}

/// Convenience wrapper over [`fidelity_lower_bound_with`] using the
/// default heralding-pipeline truncation.
pub fn fidelity_lower_bound(alpha: C64, g: f64, model: &ErrorModel) -> Result<f64> {
    let q = outcome_overlaps(alpha, g, pipeline_truncation(alpha, g, 1))?;
    Ok(fidelity_lower_bound_with(&q, model))
}

/// Convenience wrapper over [`fidelity_full_with`] using the default
/// heralding-pipeline truncation.
pub fn fidelity_full(alpha: C64, g: f64, model: &ErrorModel) -> Result<f64> {
    let q = outcome_overlaps(alpha, g, pipeline_truncation(alpha, g, 1))?;
    Ok(fidelity_full_with(&q, model))
}

/// All six outcomes with pipeline states, weights, and overlaps against
/// the ideal heralded output. Needs `g > 1`; at unit gain four of the six
/// outcomes cannot occur and the pipeline reports them as
/// [`Error::ZeroProbability`].
pub fn outcome_table(
    alpha: C64,
    g: f64,
    model: &ErrorModel,
    trunc: Truncation,
) -> Result<OutcomeTable> {
    let ideal = closed_output(alpha, g, trunc)?.psi;
    let mut outcomes = Vec::with_capacity(6);
    for &(j, k) in OUTCOMES.iter() {
        let state = outcome_state(j, k, alpha, g, trunc)?;
        let overlap_sq = if (j, k) == (1, 1) {
            1.0
        } else {
            inner_product(&state, &ideal)?.norm_sqr()
        };
        outcomes.push(Outcome {
            idler_in: j,
            idler_out: k,
            weight: model.weight(j, k),
            overlap_sq,
            state,
        });
    }
    Ok(OutcomeTable { outcomes })
}
