//! Closed form of the heralded output state for the single-photon idler
//! channel, together with the special gain values at which that state
//! acquires exact structure.
//!
//! Sending `|alpha> (x) |1>` through the amplifier and heralding on one
//! idler photon leaves the signal (up to normalization) in
//!
//! ```text
//!     |psi>  propto  (1/g^2 - G^2 n_hat) |beta>,        beta = alpha / g,
//! ```
//!
//! which lives entirely in the two-dimensional subspace spanned by the
//! coherent state `|beta>` and the displaced one-photon state
//! `D(beta)|1>`:
//!
//! ```text
//!     |psi> = C0 |beta> + C1 D(beta)|1>,
//!     C0 = (1/g^2 - G^2 |beta|^2) / sqrt(N),   C1 = -G^2 beta / sqrt(N),
//!     N  = (1/g^2 - G^2 |beta|^2)^2 + G^4 |beta|^2,
//! ```
//!
//! with success probability `P = exp(-G^2 |alpha|^2) N`. The coefficient
//! structure produces three exactly solvable features as the gain varies:
//! the Fock coefficient `n0 = 1 / (g^2 - 1)` vanishes when `n0` is an
//! integer, the state collapses onto `D(beta)|1>` at the gain where
//! `C0 = 0`, and it becomes orthogonal to the photon-added coherent state
//! `a^dagger |beta>` at the gain where `C1 + beta C0 = 0`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{coherent_state, StateVec, Truncation};
use crate::opa::AmplifierParams;

/// Heralded output in its two-state decomposition.
#[derive(Debug, Clone)]
pub struct HeraldedState {
    /// Normalized output state on the truncated basis.
    pub psi: StateVec,
    /// Coefficient of `|beta>`.
    pub c0: C64,
    /// Coefficient of `D(beta)|1>`.
    pub c1: C64,
    /// Normalization `N` of the unnormalized two-state expansion.
    pub norm_n: f64,
    /// Probability of the heralding outcome.
    pub p_success: f64,
    /// Attenuated amplitude `alpha / g`.
    pub beta: C64,
}

fn validate_alpha(alpha: C64) -> Result<()> {
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(Error::InvalidAmplitude(format!(
            "coherent amplitude must be finite, got {alpha}"
        )));
    }
    Ok(())
}

/// Coefficients `(C0, C1)` of the two-state expansion, plus the
/// normalization `N`, success probability and `beta = alpha / g`.
pub fn two_state_coefficients(alpha: C64, g: f64) -> Result<(C64, C64, f64, f64, C64)> {
    validate_alpha(alpha)?;
    let params = AmplifierParams::new(g)?;
    let g2 = params.tanh_kappa_t().powi(2); // G^2
    let beta = alpha / g;
    let b2 = beta.norm_sqr();
    let c0_raw = 1.0 / (g * g) - g2 * b2;
    let c1_raw = -beta * g2;
    let norm_n = c0_raw * c0_raw + g2 * g2 * b2;
    let p_success = (-g2 * alpha.norm_sqr()).exp() * norm_n;
    let root = norm_n.sqrt();
    Ok((
        C64::new(c0_raw / root, 0.0),
        c1_raw / root,
        norm_n,
        p_success,
        beta,
    ))
}

/// Closed-form heralded output state for `|alpha> (x) |1>` with one idler
/// photon detected, on the given truncation.
///
/// The amplitudes are built directly as
/// `(1/g^2 - G^2 n) <n|beta>` and then normalized, so the result is exact
/// on the retained basis; no two-mode evolution is performed.
pub fn closed_output(alpha: C64, g: f64, trunc: Truncation) -> Result<HeraldedState> {
    let (c0, c1, norm_n, p_success, beta) = two_state_coefficients(alpha, g)?;
    let params = AmplifierParams::new(g)?;
    let g2 = params.tanh_kappa_t().powi(2);
    let coh = coherent_state(beta, trunc)?;
    let inv_gsq = 1.0 / (g * g);
    let amps: Vec<C64> = coh
        .amps()
        .iter()
        .enumerate()
        .map(|(n, a)| a * (inv_gsq - g2 * n as f64))
        .collect();
    let psi = StateVec::from_amps(amps, trunc.tail_tol).normalized()?;
    psi.check_tail()?;
    Ok(HeraldedState {
        psi,
        c0,
        c1,
        norm_n,
        p_success,
        beta,
    })
}

/// Probability of heralding one idler photon from `|alpha> (x) |1>`:
/// `P = exp(-G^2 |alpha|^2) N`.
pub fn success_probability(alpha: C64, g: f64) -> Result<f64> {
    Ok(two_state_coefficients(alpha, g)?.3)
}

/// Gain at which the heralded state collapses onto the displaced
/// one-photon state `D(alpha/g)|1>`: the solution of `C0 = 0`,
///
/// ```text
///     g = 1 / sqrt(1 - 1/|alpha|^2),
/// ```
///
/// defined for `|alpha| > 1`.
pub fn gain_displaced_number(alpha: C64) -> Result<f64> {
    validate_alpha(alpha)?;
    let a2 = alpha.norm_sqr();
    if a2 <= 1.0 {
        return Err(Error::InvalidAmplitude(format!(
            "the displaced-number gain needs |alpha| > 1, got |alpha|^2 = {a2}"
        )));
    }
    Ok((a2 / (a2 - 1.0)).sqrt())
}

/// Gain at which the heralded state becomes orthogonal to the photon-added
/// coherent state `a^dagger |alpha/g>`: the solution of
/// `C1 + beta C0 = 0`,
///
/// ```text
///     g = sqrt[ (2 - |alpha|^2 + sqrt(|alpha|^4 + 4)) / 2 ],
/// ```
///
/// defined for `alpha != 0`.
pub fn gain_orthogonal_photon_added(alpha: C64) -> Result<f64> {
    validate_alpha(alpha)?;
    let a2 = alpha.norm_sqr();
    if a2 == 0.0 {
        return Err(Error::InvalidAmplitude(
            "the orthogonality gain needs a nonzero amplitude".into(),
        ));
    }
    Ok((0.5 * (2.0 - a2 + (a2 * a2 + 4.0).sqrt())).sqrt())
}

/// Index at which the Fock coefficient `(1/g^2 - G^2 n) <n|beta>` changes
/// sign: `n0 = 1 / (g^2 - 1)`. When `n0` is an integer that coefficient
/// vanishes exactly. Defined for `g > 1`.
pub fn vanishing_coefficient_index(g: f64) -> Result<f64> {
    let params = AmplifierParams::new(g)?;
    if params.gain() == 1.0 {
        return Err(Error::InvalidGain(
            "no Fock coefficient vanishes at unit gain".into(),
        ));
    }
    Ok(1.0 / ((g - 1.0) * (g + 1.0)))
}

/// Location of the exact zero of the Husimi function of the heralded
/// state. From `<gamma|psi> propto (1/g^2 - G^2 conj(gamma) beta)
/// exp(conj(gamma) beta)`, the overlap vanishes iff
/// `conj(gamma) beta = n0`, i.e.
///
/// ```text
///     gamma = n0 / conj(beta),       n0 = 1 / (g^2 - 1).
/// ```
///
/// Defined for `g > 1` and `alpha != 0`.
pub fn q_zero_location(alpha: C64, g: f64) -> Result<C64> {
    validate_alpha(alpha)?;
    let n0 = vanishing_coefficient_index(g)?;
    let beta = alpha / g;
    if beta.norm_sqr() == 0.0 {
        return Err(Error::InvalidAmplitude(
            "the Husimi zero needs a nonzero amplitude".into(),
        ));
    }
    Ok(n0 / beta.conj())
}
