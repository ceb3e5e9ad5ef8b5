//! Heralded conditioning of a coherent state by a two-mode parametric
//! amplifier, on truncated number bases, with every closed form backed by
//! brute-force cross-checks.
//!
//! # The device
//!
//! A nondegenerate parametric amplifier couples a signal mode `a` to an
//! idler mode `b` through `H = i kappa (a'b' - a b)` (primes denote
//! creation operators). Evolution for time `t` gives the two-mode
//! squeezer with gain `g = cosh(kappa t)`, which factors into a normal
//! ordering convenient on truncated bases:
//!
//! ```text
//!     S = (1/g) exp(-G a'b') g^(-(n_a + n_b)) exp(G a b),   G = tanh(kappa t).
//! ```
//!
//! The signal is prepared in a coherent state `|alpha>`, the idler in a
//! one-photon state, and the idler is measured after the interaction.
//! Detecting exactly one photon there heralds the signal state
//!
//! ```text
//!     |psi> = C0 |beta> + C1 D(beta)|1>,        beta = alpha / g,
//! ```
//!
//! an exact two-term superposition of an attenuated coherent state and a
//! displaced one-photon state ([`herald::two_state_coefficients`]). Its
//! number amplitudes are `(1/g^2 - G^2 n) <n|beta>`: a coherent envelope
//! with one gain-controlled spectral notch. Sweeping the gain moves the
//! output between recognizable landmarks:
//!
//! - at `g = sqrt(|alpha|^2 / (|alpha|^2 - 1))` it collapses onto
//!   `D(beta)|1>` exactly ([`herald::gain_displaced_number`]);
//! - at a slightly smaller gain it is exactly orthogonal to the
//!   photon-added coherent state `a'|beta>`
//!   ([`herald::gain_orthogonal_photon_added`]);
//! - at large gain it approaches `a'|beta>` itself;
//! - its Husimi function has a single exact zero at a predictable point
//!   ([`herald::q_zero_location`]), the unmistakable signature of the
//!   one-photon component.
//!
//! # Modules
//!
//! - [`fock`]: truncated number-basis states, coherent states, ladder
//!   operators, displacement matrices, and the tail-mass invariant that
//!   keeps truncation honest.
//! - [`expm`]: dense scaling-and-squaring matrix exponential used by the
//!   brute-force oracles.
//! - [`opa`]: the amplifier itself — the factored product form, a padded
//!   dense-exponential oracle for cross-checking it, and heralded
//!   projective measurements on the idler.
//! - [`herald`]: closed forms for the heralded output: coefficients,
//!   success probability, special gains, vanishing number amplitude,
//!   Husimi zero.
//! - [`observables`]: Husimi functions on grids, numerical zero location,
//!   reference-state projections, photon-number moments.
//! - [`error_model`]: detector dark counts and losses, the six conditional
//!   outcomes they admit, and fidelity bounds for the heralded state.
//! - [`verify`]: the end-to-end validation suite run by the CLI and the
//!   acceptance test.
//!
//! # Conventions
//!
//! States live on `n = 0 .. dim-1` with an explicit relative tail-mass
//! tolerance ([`fock::Truncation`]); operations that would push
//! significant mass past the cutoff fail loudly with
//! [`Error::TruncationTooSmall`] rather than silently truncating. All
//! quantities are dimensionless; gains are given as `g` itself rather
//! than `kappa t`.

pub mod error;
pub mod error_model;
pub mod expm;
pub mod fock;
pub mod herald;
pub mod observables;
pub mod opa;
pub mod verify;

pub use error::{Error, Result};
pub use error_model::{
    fidelity_full, fidelity_lower_bound, outcome_overlaps, outcome_table, ErrorModel,
    OutcomeOverlaps, OutcomeTable,
};
pub use fock::{coherent_state, StateVec, Truncation, TwoModeState};
pub use herald::{closed_output, success_probability, HeraldedState};
pub use observables::{
    locate_q_zero, photon_moments_closed, photon_moments_numeric, q_function, GridSpec,
    MomentReport, QGrid,
};
pub use opa::{evolve_expm_oracle, evolve_factored, herald as herald_outcome, AmplifierParams};
pub use verify::{run_acceptance_checks, CheckResult};
