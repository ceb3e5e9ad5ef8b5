//! Observables of the heralded output: Husimi function on phase-space
//! grids, location of its exact zero, projections onto the reference
//! states, and photon-number moments.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{
    coherent_state, displaced_number_state, ladder, overlap_sq, Ladder, StateVec, Truncation,
};
use crate::herald::{closed_output, two_state_coefficients};

/// Rectangular phase-space grid; `gamma = x + i y` runs over `nx * ny`
/// equally spaced nodes, `x` varying slowest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    /// Square grid of the given half-width centered on the origin.
    pub fn centered_square(half_width: f64, n: usize) -> Self {
        assert!(half_width > 0.0 && n >= 2);
        Self {
            x_min: -half_width,
            x_max: half_width,
            y_min: -half_width,
            y_max: half_width,
            nx: n,
            ny: n,
        }
    }

    /// Default phase-space window for states derived from `|alpha>`:
    /// half-width `|alpha| + 4`, 241 nodes per axis.
    pub fn default_for(alpha: C64) -> Self {
        Self::centered_square(alpha.norm() + 4.0, 241)
    }

    pub fn xs(&self) -> Vec<f64> {
        linspace(self.x_min, self.x_max, self.nx)
    }

    pub fn ys(&self) -> Vec<f64> {
        linspace(self.y_min, self.y_max, self.ny)
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + step * i as f64).collect()
}

/// Husimi function sampled on a grid; `values[(ix, iy)] = Q(x_ix + i y_iy)`.
#[derive(Debug, Clone)]
pub struct QGrid {
    pub spec: GridSpec,
    pub values: Array2<f64>,
}

/// Photon-number mean, second moment and variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentReport {
    pub mean_n: f64,
    pub second_moment: f64,
    pub variance: f64,
}

/// Squared projections of the heralded output onto its reference states:
/// the attenuated coherent state `|beta>`, the (normalized) photon-added
/// coherent state `a^dagger |beta>`, and the displaced one-photon state
/// `D(beta)|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceProjections {
    pub coherent: f64,
    pub photon_added: f64,
    pub displaced_number: f64,
}

/// Husimi function `Q(gamma) = |<gamma|psi>|^2 / pi` at a single point.
///
/// The coherent bra is used with its *raw truncated* amplitudes
/// (exact Poisson weights, no renormalization): by Cauchy-Schwarz the
/// resulting values still obey `Q <= 1/pi`, whereas renormalizing a bra
/// that sticks out of the cutoff would inflate far-field values.
pub fn q_at(state: &StateVec, gamma: C64) -> f64 {
    let mut term = C64::new((-0.5 * gamma.norm_sqr()).exp(), 0.0);
    let mut acc = C64::new(0.0, 0.0);
    for (n, a) in state.amps().iter().enumerate() {
        acc += term.conj() * a;
        term = term * gamma / ((n + 1) as f64).sqrt();
    }
    acc.norm_sqr() / std::f64::consts::PI
}

/// Husimi function of a normalized state on a grid.
pub fn q_function(state: &StateVec, spec: &GridSpec) -> Result<QGrid> {
    let n2 = state.norm_sq();
    if (n2 - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidAmplitude(format!(
            "Husimi evaluation needs a normalized state, got squared norm {n2}"
        )));
    }
    let xs = spec.xs();
    let ys = spec.ys();
    let mut values = Array2::zeros((spec.nx, spec.ny));
    for (ix, &x) in xs.iter().enumerate() {
        for (iy, &y) in ys.iter().enumerate() {
            values[(ix, iy)] = q_at(state, C64::new(x, y));
        }
    }
    Ok(QGrid {
        spec: *spec,
        values,
    })
}

/// Fraction of the grid maximum below which a node's whole neighborhood
/// counts as numerical noise when screening zero candidates.
const HOOD_NOISE_FLOOR: f64 = 1e-15;

/// Locate the zero of the Husimi function by coarse grid search plus local
/// refinement.
///
/// The coarse pass ranks nodes by *contrast* — the ratio of a node's value
/// to the maximum over its 3x3 neighborhood. A genuine zero is a pinpoint
/// dip inside a bright region (ratio at most ~1/9 at this grid spacing),
/// while the smooth dark far field and its fringes have ratios near 1 even
/// where their absolute values are lower; a plain argmin would walk off to
/// them. Neighborhoods below `1e-15` of the grid maximum are skipped as
/// noise. Four rounds of 41x41 sub-grid refinement shrink the cell by 10x
/// each, and a final three-point parabola fit per axis polishes the
/// result; `<gamma|psi>` is antiholomorphic in `gamma`, so `Q` is locally
/// an isotropic paraboloid and the per-axis fit is exact up to grid
/// curvature. Meaningful only for states whose Husimi function has an
/// isolated deep minimum on the grid.
pub fn locate_q_zero(state: &StateVec, spec: &GridSpec) -> Result<C64> {
    let coarse = q_function(state, spec)?;
    let q_max = coarse.values.iter().cloned().fold(0.0_f64, f64::max);
    if q_max == 0.0 {
        return Err(Error::NonConvergent(
            "Husimi function vanishes on the whole grid".into(),
        ));
    }
    let xs = spec.xs();
    let ys = spec.ys();
    let mut best: Option<(f64, usize, usize)> = None;
    for ix in 0..spec.nx {
        for iy in 0..spec.ny {
            let mut hood: f64 = 0.0;
            for dx in -1_isize..=1 {
                for dy in -1_isize..=1 {
                    let jx = ix as isize + dx;
                    let jy = iy as isize + dy;
                    if jx >= 0 && jy >= 0 && (jx as usize) < spec.nx && (jy as usize) < spec.ny {
                        hood = hood.max(coarse.values[(jx as usize, jy as usize)]);
                    }
                }
            }
            if hood < HOOD_NOISE_FLOOR * q_max {
                continue;
            }
            let ratio = coarse.values[(ix, iy)] / hood;
            if best.is_none_or(|(br, _, _)| ratio < br) {
                best = Some((ratio, ix, iy));
            }
        }
    }
    let (_, ix, iy) = best.ok_or_else(|| {
        Error::NonConvergent("no usable region found when searching for the Husimi zero".into())
    })?;

    let mut cx = xs[ix];
    let mut cy = ys[iy];
    let mut cell = ((spec.x_max - spec.x_min) / (spec.nx - 1) as f64)
        .max((spec.y_max - spec.y_min) / (spec.ny - 1) as f64);
    for _ in 0..4 {
        let sub = 41_usize;
        let lo_x = cx - 2.0 * cell;
        let lo_y = cy - 2.0 * cell;
        let step = 4.0 * cell / (sub - 1) as f64;
        let mut best_q = f64::INFINITY;
        let (mut bx, mut by) = (cx, cy);
        for i in 0..sub {
            for j in 0..sub {
                let x = lo_x + step * i as f64;
                let y = lo_y + step * j as f64;
                let q = q_at(state, C64::new(x, y));
                if q < best_q {
                    best_q = q;
                    bx = x;
                    by = y;
                }
            }
        }
        cx = bx;
        cy = by;
        cell = step;
    }

    // Per-axis three-point parabola vertex.
    let q0 = q_at(state, C64::new(cx, cy));
    let qxp = q_at(state, C64::new(cx + cell, cy));
    let qxm = q_at(state, C64::new(cx - cell, cy));
    let denom_x = qxp - 2.0 * q0 + qxm;
    if denom_x > 0.0 {
        cx += 0.5 * cell * (qxm - qxp) / denom_x;
    }
    let qyp = q_at(state, C64::new(cx, cy + cell));
    let qym = q_at(state, C64::new(cx, cy - cell));
    let denom_y = qyp - 2.0 * q0 + qym;
    if denom_y > 0.0 {
        cy += 0.5 * cell * (qym - qyp) / denom_y;
    }
    Ok(C64::new(cx, cy))
}

/// Squared overlaps of the heralded output with its three reference
/// states, all evaluated on the given truncation.
pub fn reference_projections(
    alpha: C64,
    g: f64,
    trunc: Truncation,
) -> Result<ReferenceProjections> {
    let h = closed_output(alpha, g, trunc)?;
    let coh = coherent_state(h.beta, trunc)?;
    let added = ladder(&coh, Ladder::Raise)?.normalized()?;
    let disp1 = displaced_number_state(h.beta, 1, trunc)?;
    Ok(ReferenceProjections {
        coherent: overlap_sq(&coh, &h.psi)?,
        photon_added: overlap_sq(&added, &h.psi)?,
        displaced_number: overlap_sq(&disp1, &h.psi)?,
    })
}

/// Photon-number moments of the heralded output from its two-state
/// decomposition, using the displaced-state matrix elements
///
/// ```text
///   <beta|n|beta>    = |beta|^2            <beta|n|beta,1>   = conj(beta)
///   <beta,1|n|beta,1> = |beta|^2 + 1
///   <beta|n^2|beta>   = |beta|^2 + |beta|^4
///   <beta|n^2|beta,1> = conj(beta) (1 + 2|beta|^2)
///   <beta,1|n^2|beta,1> = 3|beta|^2 + (|beta|^2 + 1)^2
/// ```
///
/// (`|beta,1> = D(beta)|1>`). No truncation enters; the result is exact.
pub fn photon_moments_closed(alpha: C64, g: f64) -> Result<MomentReport> {
    let (c0, c1, _, _, beta) = two_state_coefficients(alpha, g)?;
    let b2 = beta.norm_sqr();
    let cross = 2.0 * (c0.conj() * c1 * beta.conj()).re;
    let mean = c0.norm_sqr() * b2 + c1.norm_sqr() * (b2 + 1.0) + cross;
    let m2 = c0.norm_sqr() * (b2 + b2 * b2)
        + c1.norm_sqr() * (3.0 * b2 + (b2 + 1.0).powi(2))
        + cross * (2.0 * b2 + 1.0);
    Ok(MomentReport {
        mean_n: mean,
        second_moment: m2,
        variance: m2 - mean * mean,
    })
}

/// Photon-number moments by direct summation over the truncated basis
/// (normalized by the squared norm, so unnormalized states are accepted).
pub fn photon_moments_numeric(state: &StateVec) -> MomentReport {
    let mut w = 0.0;
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for (n, a) in state.amps().iter().enumerate() {
        let p = a.norm_sqr();
        w += p;
        mean += n as f64 * p;
        m2 += (n as f64) * (n as f64) * p;
    }
    mean /= w;
    m2 /= w;
    MomentReport {
        mean_n: mean,
        second_moment: m2,
        variance: m2 - mean * mean,
    }
}
