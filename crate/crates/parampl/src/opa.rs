//! Two-mode parametric-amplifier evolution and idler heralding.
//!
//! The amplifier acts on the signal mode `a` and idler mode `b` with the
//! two-mode squeezing unitary `S = exp[kt (a b - a^dagger b^dagger)]`,
//! parametrized here by the amplitude gain `g = cosh(kt) >= 1`. With
//! `G = tanh(kt) = sqrt(g^2 - 1) / g`, the unitary disentangles into the
//! normally ordered product
//!
//! ```text
//!     S = (1/g) exp(-G a'b') g^-(n_a + n_b) exp(G a b),       a' = a^dagger
//! ```
//!
//! which this module applies factor by factor. On a truncated grid the two
//! exponential factors are *strictly* triangular in total photon number:
//! `exp(G a b)` only moves amplitude downward and `exp(-G a'b')` only
//! upward, so every power series terminates after at most `min(dim)` terms
//! and the amplitude landing on a given level pair `(n, m)` never depends
//! on levels above it. Truncating therefore crops the exact state without
//! distorting the retained amplitudes — the property that makes heralding
//! on low idler outcomes reliable even when the unprojected output has
//! long tails.
//!
//! A brute-force oracle is provided for cross-checking: it embeds the grid
//! in a padded one, exponentiates the generator `kt (a b - a'b')` densely
//! (block by block over the conserved photon-number difference `n - m`),
//! and crops the result back.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::expm::expm;
use crate::fock::{coherent_state, project_idler, tensor, StateVec, Truncation, TwoModeState};

/// Relative term norm at which the exponential-factor power series is
/// declared converged.
const SERIES_EPS: f64 = 1e-16;

/// Heralding weights below this are treated as impossible outcomes.
const ZERO_WEIGHT: f64 = 1e-300;

/// Largest flat dimension (`signal_dim * idler_dim`) accepted by the dense
/// oracle before padding.
const MAX_ORACLE_FLAT: usize = 4000;

/// Largest flat dimension of the padded grid the oracle will exponentiate.
const MAX_PADDED_FLAT: usize = 90_000;

/// Amplifier strength in the three equivalent parametrizations used by the
/// factored evolution: amplitude gain `g = cosh(kt)`, squeeze parameter
/// `kt`, and pair amplitude `G = tanh(kt)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplifierParams {
    g: f64,
    tanh_kt: f64,
    kappa_t: f64,
}

impl AmplifierParams {
    /// Validate and derive the parameter set from the amplitude gain.
    ///
    /// `tanh(kt)` is computed as `sqrt((g-1)(g+1)) / g` and `kt` as
    /// `ln_1p((g-1) + sqrt((g-1)(g+1)))`, both of which stay fully accurate
    /// as `g -> 1` where the naive `sqrt(g^2 - 1)` and `acosh` forms lose
    /// digits to cancellation.
    pub fn new(g: f64) -> Result<Self> {
        if !g.is_finite() || g < 1.0 {
            return Err(Error::InvalidGain(format!(
                "amplitude gain must be finite and at least 1, got {g}"
            )));
        }
        let root = ((g - 1.0) * (g + 1.0)).sqrt();
        Ok(Self {
            g,
            tanh_kt: root / g,
            kappa_t: ((g - 1.0) + root).ln_1p(),
        })
    }

    /// Amplitude gain `g = cosh(kt)`.
    pub fn gain(&self) -> f64 {
        self.g
    }

    /// Pair amplitude `G = tanh(kt) = sqrt(g^2 - 1) / g`.
    pub fn tanh_kappa_t(&self) -> f64 {
        self.tanh_kt
    }

    /// Squeeze parameter `kt = arccosh(g)`.
    pub fn kappa_t(&self) -> f64 {
        self.kappa_t
    }
}

/// Truncation sized for amplifying `|alpha> (x) |n_idler>` at gain `g`.
///
/// The cutoff covers the larger of the two output mean photon numbers,
/// `<n_signal> = g^2 |alpha|^2 + (g^2 - 1)(n_idler + 1)` and
/// `<n_idler> = g^2 n_idler + (g^2 - 1)(|alpha|^2 + 1)`, with the usual
/// ten-standard-deviation margin.
pub fn pipeline_truncation(alpha: C64, g: f64, idler_in: usize) -> Truncation {
    let a2 = alpha.norm_sqr();
    let g2 = g * g;
    let ni = idler_in as f64;
    let out_signal = g2 * a2 + (g2 - 1.0) * (ni + 1.0);
    let out_idler = g2 * ni + (g2 - 1.0) * (a2 + 1.0);
    Truncation::for_mean_photons(out_signal.max(out_idler))
}

// (a b psi)[n, m] = sqrt((n+1)(m+1)) psi[n+1, m+1]: strictly downward.
fn pair_lower(src: &Array2<C64>) -> Array2<C64> {
    let (ds, di) = src.dim();
    let mut out = Array2::from_elem((ds, di), C64::new(0.0, 0.0));
    for n in 0..ds - 1 {
        for m in 0..di - 1 {
            out[(n, m)] = (((n + 1) * (m + 1)) as f64).sqrt() * src[(n + 1, m + 1)];
        }
    }
    out
}

// (a'b' psi)[n, m] = sqrt(n m) psi[n-1, m-1]: strictly upward.
fn pair_raise(src: &Array2<C64>) -> Array2<C64> {
    let (ds, di) = src.dim();
    let mut out = Array2::from_elem((ds, di), C64::new(0.0, 0.0));
    for n in 1..ds {
        for m in 1..di {
            out[(n, m)] = ((n * m) as f64).sqrt() * src[(n - 1, m - 1)];
        }
    }
    out
}

fn frob_norm(arr: &Array2<C64>) -> f64 {
    arr.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Apply `exp(coeff * op)` with `op` one pair operator, by its power
/// series: `term_k = (coeff / k) op term_{k-1}`. On the truncated grid the
/// series terminates exactly once the operator has swept the support off
/// the grid, so the iteration budget `max(dims) + 1` can only be exhausted
/// by a logic error, reported as [`Error::NonConvergent`].
fn exp_pair_series(src: &Array2<C64>, coeff: f64, raise: bool) -> Result<Array2<C64>> {
    let mut acc = src.clone();
    let mut term = src.clone();
    let budget = src.nrows().max(src.ncols()) + 1;
    for k in 1..=budget {
        term = if raise {
            pair_raise(&term)
        } else {
            pair_lower(&term)
        };
        let c = coeff / k as f64;
        term.mapv_inplace(|x| x * c);
        acc += &term;
        if frob_norm(&term) <= SERIES_EPS * frob_norm(&acc) {
            return Ok(acc);
        }
    }
    Err(Error::NonConvergent(format!(
        "pair-operator exponential series still above {SERIES_EPS:.0e} after {budget} terms"
    )))
}

// g^-(n + m) photon-number damping, via an incrementally built power table.
fn apply_damping(g: f64, arr: &mut Array2<C64>) {
    let (ds, di) = arr.dim();
    let mut pw = vec![1.0_f64; ds + di - 1];
    for j in 1..pw.len() {
        pw[j] = pw[j - 1] / g;
    }
    for ((n, m), v) in arr.indexed_iter_mut() {
        *v *= pw[n + m];
    }
}

// Factored unitary without any tail enforcement; `evolve_factored` wraps
// this with checks, `herald` deliberately does not (see its docs).
fn evolve_unitary(params: &AmplifierParams, input: &TwoModeState) -> Result<Array2<C64>> {
    let g = params.gain();
    if g == 1.0 {
        return Ok(input.amps().clone());
    }
    let gg = params.tanh_kappa_t();
    let mut arr = exp_pair_series(input.amps(), gg, false)?;
    apply_damping(g, &mut arr);
    arr = exp_pair_series(&arr, -gg, true)?;
    let inv_g = 1.0 / g;
    arr.mapv_inplace(|x| x * inv_g);
    Ok(arr)
}

/// Evolve a two-mode state through the amplifier using the factored form.
///
/// Both the input and the output must satisfy the truncation invariant;
/// outputs with too much mass near the cutoff fail with
/// [`Error::TruncationTooSmall`]. Amplification stretches photon-number
/// tails geometrically, so the cutoff must be sized for the *output*
/// (see [`pipeline_truncation`]) or the tolerance relaxed.
pub fn evolve_factored(params: &AmplifierParams, input: &TwoModeState) -> Result<TwoModeState> {
    input.check_tails()?;
    let out = TwoModeState::from_array(evolve_unitary(params, input)?, input.tail_tol());
    out.check_tails()?;
    Ok(out)
}

// exp[kt (a b - a'b')] applied densely, one block per conserved photon
// difference n - m; each block's generator is real antisymmetric
// tridiagonal, so the blocks exponentiate cheaply in f64.
fn expm_generator(kappa_t: f64, src: &Array2<C64>) -> Array2<C64> {
    let (ds, di) = src.dim();
    let mut out = Array2::from_elem((ds, di), C64::new(0.0, 0.0));
    for delta in -(di as isize - 1)..=(ds as isize - 1) {
        let m0 = (-delta).max(0) as usize;
        let m1 = (di as isize - 1).min(ds as isize - 1 - delta) as usize;
        if m1 < m0 {
            continue;
        }
        let sz = m1 - m0 + 1;
        let mut gen = Array2::<f64>::zeros((sz, sz));
        for (i, m) in (m0..=m1).enumerate() {
            let n = (m as isize + delta) as usize;
            if i > 0 {
                gen[(i - 1, i)] = kappa_t * ((n * m) as f64).sqrt(); // a b
            }
            if i + 1 < sz {
                gen[(i + 1, i)] = -kappa_t * (((n + 1) * (m + 1)) as f64).sqrt();
                // -a'b'
            }
        }
        let u = expm(&gen);
        for (i, m_out) in (m0..=m1).enumerate() {
            let n_out = (m_out as isize + delta) as usize;
            let mut s = C64::new(0.0, 0.0);
            for (j, m_in) in (m0..=m1).enumerate() {
                let n_in = (m_in as isize + delta) as usize;
                s += u[(i, j)] * src[(n_in, m_in)];
            }
            out[(n_out, m_out)] = s;
        }
    }
    out
}

/// Brute-force amplifier evolution: dense exponentiation of the generator
/// on a padded grid, cropped back to the input grid.
///
/// Padding matters. A dense exponential on the bare grid is a *different*
/// unitary from the infinite-dimensional evolution — reflections off the
/// cutoff corrupt every level, while the factored product reproduces the
/// exact state cropped to the grid. The oracle therefore pads each mode
/// until the mass the true evolution could send past the padded edge is
/// negligible (each rung above the support is suppressed by `G^2`), making
/// its cropped output exact as well. Fails with
/// [`Error::DimensionTooLarge`] when the bare grid exceeds 4000 flat
/// entries or the padded grid would exceed 90000.
pub fn evolve_expm_oracle(params: &AmplifierParams, input: &TwoModeState) -> Result<TwoModeState> {
    let (ds, di) = input.dims();
    if ds * di > MAX_ORACLE_FLAT {
        return Err(Error::DimensionTooLarge(format!(
            "oracle grid {ds} x {di} exceeds {MAX_ORACLE_FLAT} flat entries"
        )));
    }
    if params.gain() == 1.0 {
        return Ok(input.clone());
    }
    let g2 = params.tanh_kappa_t().powi(2);
    if g2 >= 1.0 {
        return Err(Error::DimensionTooLarge(format!(
            "gain {} too large for the dense oracle",
            params.gain()
        )));
    }
    // Suppression per padded rung is G^2 < 1; 42 nats of suppression keeps
    // the edge flux below ~1e-18.
    let pad = (42.0 / -g2.ln()).ceil() as usize + 8;
    let (ps, pi) = (ds + pad, di + pad);
    if ps * pi > MAX_PADDED_FLAT {
        return Err(Error::DimensionTooLarge(format!(
            "padded oracle grid {ps} x {pi} exceeds {MAX_PADDED_FLAT} flat entries"
        )));
    }
    let mut big = Array2::from_elem((ps, pi), C64::new(0.0, 0.0));
    for ((n, m), v) in input.amps().indexed_iter() {
        big[(n, m)] = *v;
    }
    let evolved = expm_generator(params.kappa_t(), &big);
    let mut out = Array2::from_elem((ds, di), C64::new(0.0, 0.0));
    for ((n, m), v) in out.indexed_iter_mut() {
        *v = evolved[(n, m)];
    }
    Ok(TwoModeState::from_array(out, input.tail_tol()))
}

/// Send `|alpha> (x) |idler_in>` through the amplifier and herald on the
/// idler leaving with `idler_out` photons.
///
/// Returns the normalized heralded signal state and the outcome
/// probability. The unprojected two-mode output is *not* tail-checked:
/// the heralded slice receives amplitude only from levels at or below it
/// (the raising factor moves amplitude strictly upward), so it is immune
/// to truncation-edge mass in the discarded idler sectors. The tail check
/// applies to the returned signal state, where it is meaningful.
///
/// Outcomes of weight below `1e-300` — e.g. extracting a photon at unit
/// gain — fail with [`Error::ZeroProbability`].
pub fn herald(
    params: &AmplifierParams,
    alpha: C64,
    idler_in: usize,
    idler_out: usize,
    trunc: Truncation,
) -> Result<(StateVec, f64)> {
    let signal = coherent_state(alpha, trunc)?;
    let idler = StateVec::basis(idler_in, trunc)?;
    let joint = tensor(&signal, &idler);
    let out = TwoModeState::from_array(evolve_unitary(params, &joint)?, trunc.tail_tol);
    let (slice, weight) = project_idler(&out, idler_out)?;
    if weight < ZERO_WEIGHT {
        return Err(Error::ZeroProbability(format!(
            "idler outcome |{idler_out}> from |{idler_in}> at gain {} has weight {weight:.3e}",
            params.gain()
        )));
    }
    let state = slice.normalized()?;
    state.check_tail()?;
    Ok((state, weight))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{overlap_sq, StateVec};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn coherent_tensor_basis(alpha: C64, n_idler: usize, trunc: Truncation) -> TwoModeState {
        let s = coherent_state(alpha, trunc).unwrap();
        let i = StateVec::basis(n_idler, trunc).unwrap();
        tensor(&s, &i)
    }

    #[test]
    fn params_reject_unphysical_gain() {
        assert!(matches!(
            AmplifierParams::new(0.5),
            Err(Error::InvalidGain(_))
        ));
        assert!(matches!(
            AmplifierParams::new(f64::NAN),
            Err(Error::InvalidGain(_))
        ));
    }

    #[test]
    fn params_satisfy_hyperbolic_identities() {
        for g in [1.0, 1.0 + 1e-12, 1.05, 1.1547, 2.0, 10.0] {
            let p = AmplifierParams::new(g).unwrap();
            assert_abs_diff_eq!(p.kappa_t().cosh(), g, epsilon = 1e-12 * g);
            assert_abs_diff_eq!(p.kappa_t().tanh(), p.tanh_kappa_t(), epsilon = 1e-14);
            // G^2 = (g^2 - 1) / g^2
            assert_abs_diff_eq!(
                p.tanh_kappa_t().powi(2),
                (g * g - 1.0) / (g * g),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn unit_gain_evolution_is_exact_identity() {
        let trunc = Truncation::new(20, 1e-12);
        let input = coherent_tensor_basis(c(0.9, -0.4), 1, trunc);
        let p = AmplifierParams::new(1.0).unwrap();
        let out = evolve_factored(&p, &input).unwrap();
        assert_eq!(out.amps(), input.amps());
    }

    #[test]
    fn vacuum_input_produces_two_mode_squeezed_vacuum() {
        // S |0, 0> = (1/g) sum_k (-G)^k |k, k>.
        let trunc = Truncation::new(40, 1e-12);
        let input = coherent_tensor_basis(c(0.0, 0.0), 0, trunc);
        let p = AmplifierParams::new(1.25).unwrap();
        let out = evolve_factored(&p, &input).unwrap();
        let g = p.gain();
        let gg = p.tanh_kappa_t();
        for n in 0..trunc.dim {
            for m in 0..trunc.dim {
                let expect = if n == m {
                    (1.0 / g) * (-gg).powi(n as i32)
                } else {
                    0.0
                };
                assert_abs_diff_eq!(out.amps()[(n, m)].re, expect, epsilon = 1e-13);
                assert_abs_diff_eq!(out.amps()[(n, m)].im, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn pair_series_on_single_photon_pair_has_two_terms() {
        // exp(G a b) |1, 1> = |1, 1> + G |0, 0>, exactly.
        let trunc = Truncation::new(12, 1e-12);
        let one = StateVec::basis(1, trunc).unwrap();
        let joint = tensor(&one, &one);
        let gg = 0.37;
        let out = exp_pair_series(joint.amps(), gg, false).unwrap();
        for ((n, m), v) in out.indexed_iter() {
            let expect = match (n, m) {
                (1, 1) => 1.0,
                (0, 0) => gg,
                _ => 0.0,
            };
            assert_abs_diff_eq!(v.re, expect, epsilon = 1e-15);
            assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn factored_evolution_preserves_norm_when_cutoff_is_ample() {
        let trunc = Truncation::new(56, 1e-12);
        let input = coherent_tensor_basis(c(1.0, 0.0), 1, trunc);
        let p = AmplifierParams::new(1.2).unwrap();
        let out = evolve_factored(&p, &input).unwrap();
        assert_abs_diff_eq!(out.norm_sq(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn block_exponential_matches_flat_dense_exponential() {
        // Validates the block decomposition over n - m against a single
        // dense exponential of the full flat generator.
        let dim = 10;
        let trunc = Truncation::new(dim, 0.9);
        let input = coherent_tensor_basis(c(0.8, 0.3), 1, trunc);
        let kt = AmplifierParams::new(1.3).unwrap().kappa_t();

        let flat_n = dim * dim;
        let mut gen = Array2::from_elem((flat_n, flat_n), c(0.0, 0.0));
        for n in 0..dim {
            for m in 0..dim {
                let row = n * dim + m;
                if n + 1 < dim && m + 1 < dim {
                    // a b: (n, m) <- (n+1, m+1)
                    gen[(row, (n + 1) * dim + (m + 1))] +=
                        c(kt * (((n + 1) * (m + 1)) as f64).sqrt(), 0.0);
                }
                if n >= 1 && m >= 1 {
                    // -a'b': (n, m) <- (n-1, m-1)
                    gen[(row, (n - 1) * dim + (m - 1))] -= c(kt * ((n * m) as f64).sqrt(), 0.0);
                }
            }
        }
        let u = expm(&gen);
        let mut flat_in = vec![c(0.0, 0.0); flat_n];
        for ((n, m), v) in input.amps().indexed_iter() {
            flat_in[n * dim + m] = *v;
        }
        let blocks = expm_generator(kt, input.amps());
        for n in 0..dim {
            for m in 0..dim {
                let mut expect = c(0.0, 0.0);
                for j in 0..flat_n {
                    expect += u[(n * dim + m, j)] * flat_in[j];
                }
                let got = blocks[(n, m)];
                assert_abs_diff_eq!(got.re, expect.re, epsilon = 1e-12);
                assert_abs_diff_eq!(got.im, expect.im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn factored_evolution_matches_padded_dense_oracle() {
        // The two implementations agree on the full grid to near machine
        // precision, independent of how much mass the output parks near
        // the cutoff — both compute the exact state cropped to the grid.
        let trunc = Truncation::new(20, 0.9); // tolerance irrelevant here
        for (alpha, idler_in, g) in [
            (c(1.0, 0.0), 0, 1.05),
            (c(1.0, 0.0), 1, 1.2),
            (c(0.6, -0.8), 1, 1.5),
        ] {
            let input = coherent_tensor_basis(alpha, idler_in, trunc);
            let p = AmplifierParams::new(g).unwrap();
            let fast = evolve_factored(&p, &input).unwrap();
            let oracle = evolve_expm_oracle(&p, &input).unwrap();
            let diff: f64 = fast
                .amps()
                .iter()
                .zip(oracle.amps().iter())
                .map(|(x, y)| (x - y).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(
                diff < 1e-12,
                "factored vs oracle differ by {diff:.3e} at g = {g}"
            );
        }
    }

    #[test]
    fn oracle_rejects_oversized_grids() {
        let trunc = Truncation::new(80, 0.9);
        let input = coherent_tensor_basis(c(0.5, 0.0), 0, trunc);
        let p = AmplifierParams::new(1.1).unwrap();
        assert!(matches!(
            evolve_expm_oracle(&p, &input),
            Err(Error::DimensionTooLarge(_))
        ));
    }

    #[test]
    fn herald_probabilities_match_closed_forms_for_trivial_idler_outcomes() {
        // From the factored form with idler |0> in:
        //   P(0 -> 0) = e^{-G^2 |alpha|^2} / g^2
        //   P(0 -> 1) = G^2 e^{-G^2 |alpha|^2} (1 + |alpha/g|^2) / g^2
        //   P(1 -> 0) = G^2 |alpha|^2 e^{-G^2 |alpha|^2} / g^2
        let alpha = c(1.1, 0.7);
        let a2 = alpha.norm_sqr();
        for g in [1.1, 1.6] {
            let p = AmplifierParams::new(g).unwrap();
            let trunc = pipeline_truncation(alpha, g, 1);
            let g2 = p.tanh_kappa_t().powi(2);
            let damp = (-g2 * a2).exp();

            let (state00, w00) = herald(&p, alpha, 0, 0, trunc).unwrap();
            assert_abs_diff_eq!(w00, damp / (g * g), epsilon = 1e-12);
            let coh = coherent_state(alpha / g, trunc).unwrap();
            assert_abs_diff_eq!(overlap_sq(&state00, &coh).unwrap(), 1.0, epsilon = 1e-12);

            let (_, w01) = herald(&p, alpha, 0, 1, trunc).unwrap();
            let expect01 = g2 * damp * (1.0 + a2 / (g * g)) / (g * g);
            assert_abs_diff_eq!(w01, expect01, epsilon = 1e-12);

            let (state10, w10) = herald(&p, alpha, 1, 0, trunc).unwrap();
            assert_abs_diff_eq!(w10, g2 * a2 * damp / (g * g), epsilon = 1e-12);
            assert_abs_diff_eq!(overlap_sq(&state10, &coh).unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn herald_at_unit_gain_returns_input_signal() {
        let alpha = c(0.9, 0.2);
        let trunc = Truncation::for_mean_photons(alpha.norm_sqr());
        let p = AmplifierParams::new(1.0).unwrap();
        let (state, prob) = herald(&p, alpha, 1, 1, trunc).unwrap();
        assert_eq!(prob, 1.0);
        let coh = coherent_state(alpha, trunc).unwrap();
        assert_abs_diff_eq!(overlap_sq(&state, &coh).unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn herald_rejects_impossible_outcome_at_unit_gain() {
        let trunc = Truncation::new(24, 1e-12);
        let p = AmplifierParams::new(1.0).unwrap();
        assert!(matches!(
            herald(&p, c(0.8, 0.0), 0, 1, trunc),
            Err(Error::ZeroProbability(_))
        ));
    }

    #[test]
    fn herald_weights_sum_to_unity_over_all_idler_outcomes() {
        // Unitarity: summing the heralding weights over every idler
        // outcome recovers the input norm up to the truncation leakage.
        for (alpha, g) in [(c(1.0, 0.0), 1.05), (c(2.0, 0.0), 1.1), (c(1.0, 0.5), 1.2)] {
            let trunc = pipeline_truncation(alpha, g, 1);
            let p = AmplifierParams::new(g).unwrap();
            let joint = coherent_tensor_basis(alpha, 1, trunc);
            let out = TwoModeState::from_array(evolve_unitary(&p, &joint).unwrap(), 1.0 - 1e-9);
            let total: f64 = (0..trunc.dim)
                .map(|m| project_idler(&out, m).unwrap().1)
                .sum();
            assert!(
                (total - 1.0).abs() < 1e-9,
                "outcome weights sum to {total} at gain {g}"
            );
        }
    }
}
