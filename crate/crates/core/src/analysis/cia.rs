//! Absorption operating points: peak absorption versus free-space loss, and
//! the equal-difference shift that maximizes the weakest subradiant peak.

use rayon::prelude::*;

use super::comb::comb_config;
use super::sweep::{sweep_spectrum, Feature};
use crate::eig::{eigendecompose, ModeClass};
use crate::error::{Error, Result};
use crate::model::{build_effective_hamiltonian, ArrayConfig};
use crate::numerics::{bisect, central_derivative, golden_section_max};
use crate::scatter::{ResolventModel, STATIONARITY_STEP};

const PEAK_TOL: f64 = 1e-13;
const BISECT_TOL: f64 = 1e-12;

/// One absorption peak of one `Γ_f` value, labelled by the branch it was
/// continued along.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CiaBranchPoint {
    pub gamma_f: f64,
    pub eta_max: f64,
    pub delta_probe: f64,
    pub branch: usize,
}

#[derive(Debug, Clone)]
pub struct CiaOperatingPoints {
    /// Every refined peak, grouped by `Γ_f` in grid order, then by `Δ*`.
    pub rows: Vec<CiaBranchPoint>,
    /// Values of `Γ_f` at which a branch's peak absorption is stationary.
    pub stationary: Vec<CiaBranchPoint>,
}

/// Sweeps `Δ` over `span` with `npts` points for every `Γ_f` in `gf_grid`,
/// records the refined absorption maxima and locates the stationary points
/// of each branch's peak height.
pub fn cia_operating_points(
    config: &ArrayConfig,
    gf_grid: &[f64],
    span: (f64, f64),
    npts: usize,
) -> Result<CiaOperatingPoints> {
    if gf_grid.iter().any(|g| !(g.is_finite() && *g > 0.0)) {
        return Err(Error::argument("gf_grid", "values must be finite and > 0"));
    }
    if gf_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::argument("gf_grid", "must be strictly increasing"));
    }
    let per_gf: Vec<Vec<Feature>> = gf_grid
        .iter()
        .map(|&gf| {
            let scenario = config.clone().with_gamma_f(gf)?;
            Ok(sweep_spectrum(&scenario, span.0, span.1, npts)?.absorption_peaks)
        })
        .collect::<Result<_>>()?;
    let step = (span.1 - span.0) / (npts - 1) as f64;

    // Greedy continuation: each peak joins the nearest open branch within a
    // few grid steps, otherwise starts a new one.
    let reach = 4.0 * step;
    let mut last: Vec<f64> = Vec::new();
    let mut rows = Vec::new();
    for (&gf, peaks) in gf_grid.iter().zip(&per_gf) {
        let mut taken = vec![false; last.len()];
        for peak in peaks {
            let nearest = last
                .iter()
                .enumerate()
                .filter(|(b, _)| !taken[*b])
                .map(|(b, &d)| (b, (d - peak.delta_probe).abs()))
                .filter(|&(_, dist)| dist <= reach)
                .min_by(|x, y| x.1.total_cmp(&y.1));
            let branch = match nearest {
                Some((b, _)) => b,
                None => {
                    last.push(peak.delta_probe);
                    taken.push(false);
                    last.len() - 1
                }
            };
            taken[branch] = true;
            last[branch] = peak.delta_probe;
            rows.push(CiaBranchPoint { gamma_f: gf, eta_max: peak.value, delta_probe: peak.delta_probe, branch });
        }
    }

    let branches = last.len();
    let stationary: Vec<CiaBranchPoint> = (0..branches)
        .into_par_iter()
        .flat_map_iter(|b| {
            let track: Vec<&CiaBranchPoint> = rows.iter().filter(|r| r.branch == b).collect();
            stationary_points(config, &track, step)
        })
        .collect();

    Ok(CiaOperatingPoints { rows, stationary })
}

/// Peak absorption near `centre`, searched within `±width`.
fn local_peak(config: &ArrayConfig, gamma_f: f64, centre: f64, width: f64) -> Option<(f64, f64)> {
    let scenario = config.clone().with_gamma_f(gamma_f).ok()?;
    let model = ResolventModel::new(&scenario);
    let (x, eta) = golden_section_max(|d| model.absorption(d), centre - width, centre + width, PEAK_TOL);
    eta.is_finite().then_some((x, eta))
}

fn stationary_points(config: &ArrayConfig, track: &[&CiaBranchPoint], step: f64) -> Vec<CiaBranchPoint> {
    let branch = match track.first() {
        Some(p) => p.branch,
        None => return Vec::new(),
    };
    let mut found = Vec::new();
    for w in track.windows(3) {
        let rising = w[1].eta_max - w[0].eta_max;
        let falling = w[2].eta_max - w[1].eta_max;
        if rising.signum() == falling.signum() || rising == 0.0 && falling == 0.0 {
            continue;
        }
        let centre = w[1].delta_probe;
        let width = 2.0 * step;
        let peak = |gf: f64| local_peak(config, gf, centre, width).map_or(f64::NAN, |p| p.1);
        let slope = |gf: f64| central_derivative(peak, gf, STATIONARITY_STEP);
        let lo = w[0].gamma_f.max(3.0 * STATIONARITY_STEP);
        let Some(gf) = bisect(slope, lo, w[2].gamma_f, BISECT_TOL) else {
            continue;
        };
        if let Some((delta_probe, eta_max)) = local_peak(config, gf, centre, width) {
            found.push(CiaBranchPoint { gamma_f: gf, eta_max, delta_probe, branch });
        }
    }
    found
}

#[derive(Debug, Clone)]
pub struct ShiftSearch {
    pub delta_star: f64,
    /// Weakest subradiant absorption peak at `delta_star`.
    pub eta_star: f64,
    /// `(δ, weakest peak)` for every grid value; `NaN` where undefined.
    pub profile: Vec<(f64, f64)>,
}

/// Scans the equal-difference shift `δ` at fixed `Γ_f` for the value that
/// maximizes the smallest absorption peak among the subradiant modes.
pub fn cia_shift_search(n: usize, gamma_f: f64, delta_grid: &[f64]) -> Result<ShiftSearch> {
    if !(gamma_f.is_finite() && gamma_f > 0.0) {
        return Err(Error::argument("gamma_f", "must be > 0"));
    }
    if delta_grid.is_empty() || delta_grid.iter().any(|d| !(d.is_finite() && *d > 0.0)) {
        return Err(Error::argument("delta_grid", "values must be finite and > 0"));
    }
    if delta_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::argument("delta_grid", "must be strictly increasing"));
    }
    comb_config(n, 1.0)?;

    let profile: Vec<(f64, f64)> = delta_grid
        .par_iter()
        .map(|&d| (d, weakest_subradiant_peak(n, gamma_f, d)))
        .collect();
    let best = (0..profile.len())
        .filter(|&i| profile[i].1.is_finite())
        .max_by(|&i, &j| profile[i].1.total_cmp(&profile[j].1))
        .ok_or_else(|| Error::argument("delta_grid", "no grid value yields subradiant peaks"))?;

    let lo = delta_grid[best.saturating_sub(1)];
    let hi = delta_grid[(best + 1).min(delta_grid.len() - 1)];
    let (mut delta_star, mut eta_star) = (profile[best].0, profile[best].1);
    if hi > lo {
        let (x, v) = golden_section_max(
            |d| {
                let v = weakest_subradiant_peak(n, gamma_f, d);
                if v.is_finite() { v } else { f64::NEG_INFINITY }
            },
            lo,
            hi,
            PEAK_TOL,
        );
        if v > eta_star {
            delta_star = x;
            eta_star = v;
        }
    }
    Ok(ShiftSearch { delta_star, eta_star, profile })
}

fn weakest_subradiant_peak(n: usize, gamma_f: f64, delta: f64) -> f64 {
    let Ok(config) = comb_config(n, delta).and_then(|c| c.with_gamma_f(gamma_f)) else {
        return f64::NAN;
    };
    let Ok(system) = eigendecompose(&build_effective_hamiltonian(&config)) else {
        return f64::NAN;
    };
    let model = ResolventModel::new(&config);
    let levels: Vec<f64> = system
        .modes
        .iter()
        .filter(|m| m.class == ModeClass::Subradiant)
        .map(|m| m.level())
        .collect();
    if levels.len() != n - 1 {
        return f64::NAN;
    }
    levels
        .iter()
        .map(|&e| {
            golden_section_max(|d| model.absorption(d), e - delta / 2.0, e + delta / 2.0, PEAK_TOL).1
        })
        .fold(f64::INFINITY, f64::min)
}
