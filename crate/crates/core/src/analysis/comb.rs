use crate::eig::n_atom_single_shift_closed_form;
use crate::error::{Error, Result};
use crate::model::ArrayConfig;

/// Window height that counts as a comb tooth.
pub const COMB_THRESHOLD: f64 = 0.999;

/// Bragg array with shifts `(0, δ, 2δ, …, (N−1)δ)`.
pub fn comb_config(n: usize, delta: f64) -> Result<ArrayConfig> {
    if n < 2 {
        return Err(Error::argument("n", "comb needs at least two atoms"));
    }
    ArrayConfig::bragg((0..n).map(|j| j as f64 * delta).collect())
}

/// Distance between the single-shift transparency window `(1 − 1/N)δ` and
/// the level of the subradiant mode.
pub fn transparency_vs_subradiant_offset(n: usize, delta: f64, gamma: f64) -> Result<f64> {
    let pair = n_atom_single_shift_closed_form(n, 0.0, delta, gamma)?;
    let window = (1.0 - 1.0 / n as f64) * delta;
    Ok(window - pair.e1.re)
}
