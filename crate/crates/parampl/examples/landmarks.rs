//! Walk the heralded output through its gain landmarks for `alpha = 2`:
//! the input itself at unit gain, the displaced one-photon collapse, the
//! photon-added orthogonality point, and the large-gain photon-added
//! limit.

use num_complex::Complex64 as C64;
use parampl::fock::{coherent_state, ladder, overlap_sq, Ladder};
use parampl::herald::{gain_displaced_number, gain_orthogonal_photon_added};
use parampl::{closed_output, photon_moments_closed, Result, Truncation};

fn main() -> Result<()> {
    let alpha = C64::new(2.0, 0.0);
    let trunc = Truncation::for_mean_photons(alpha.norm_sqr() + 2.0);

    let g0 = gain_displaced_number(alpha)?;
    let g1 = gain_orthogonal_photon_added(alpha)?;
    println!("landmark gains: g0 = {g0:.6} (collapse), g1 = {g1:.6} (orthogonality)");

    for g in [1.0, g1, g0, 5.0] {
        let heralded = closed_output(alpha, g, trunc)?;
        let beta = heralded.beta;
        let coherent = coherent_state(beta, trunc)?;
        let photon_added = ladder(&coherent, Ladder::Raise)?.normalized()?;
        let m = photon_moments_closed(alpha, g)?;
        println!(
            "g = {g:.4}: P_success = {:.4}, |<beta|psi>|^2 = {:.4}, \
             |<pacs|psi>|^2 = {:.4}, mean n = {:.3}, variance = {:.3}",
            heralded.p_success,
            overlap_sq(&coherent, &heralded.psi)?,
            overlap_sq(&photon_added, &heralded.psi)?,
            m.mean_n,
            m.variance,
        );
    }
    Ok(())
}
