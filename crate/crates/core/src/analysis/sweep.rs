use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::ArrayConfig;
use crate::numerics::{golden_section_max, golden_section_min, linspace};
use crate::scatter::{ResolventModel, ScatteringResult};

pub const DEFAULT_NPTS: usize = 2001;
pub const DEFAULT_WINDOW_THRESHOLD: f64 = 0.99;
/// Bracket width at which golden-section refinement stops.
const REFINE_TOL: f64 = 1e-13;
/// Refined features closer than this are the same feature.
const MERGE_TOL: f64 = 1e-9;

/// A refined spectral feature: probe detuning and the value at the extremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Feature {
    pub delta_probe: f64,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub config: ArrayConfig,
    /// Strictly increasing probe detunings `Δ`.
    pub grid: Vec<f64>,
    /// One entry per grid point; `None` where the resolvent solve failed.
    pub points: Vec<Option<ScatteringResult>>,
    /// Transparency windows at the default threshold.
    pub windows: Vec<Feature>,
    /// Absorption maxima (empty without free-space loss).
    pub absorption_peaks: Vec<Feature>,
}

impl SweepResult {
    pub fn gaps(&self) -> usize {
        self.points.iter().filter(|p| p.is_none()).count()
    }

    pub fn transmission(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.map_or(f64::NAN, |s| s.transmission)).collect()
    }

    pub fn absorption(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.map_or(f64::NAN, |s| s.eta)).collect()
    }
}

/// Evaluates the resolvent on a uniform `Δ` grid and detects features.
pub fn sweep_spectrum(
    config: &ArrayConfig,
    delta_min: f64,
    delta_max: f64,
    npts: usize,
) -> Result<SweepResult> {
    if npts < 2 {
        return Err(Error::argument("npts", "must be >= 2"));
    }
    if !(delta_min.is_finite() && delta_max.is_finite() && delta_min < delta_max) {
        return Err(Error::argument("span", "needs finite lo < hi"));
    }
    let grid = linspace(delta_min, delta_max, npts);
    let model = ResolventModel::new(config);
    let points: Vec<_> = grid.par_iter().map(|&d| model.at_detuning(d).ok()).collect();
    let mut sweep = SweepResult {
        config: config.clone(),
        grid,
        points,
        windows: Vec::new(),
        absorption_peaks: Vec::new(),
    };
    sweep.windows = find_transparency_windows(&sweep, DEFAULT_WINDOW_THRESHOLD);
    if config.gamma_f() > 0.0 {
        sweep.absorption_peaks = find_absorption_peaks(&sweep);
    }
    Ok(sweep)
}

/// Local transmission maxima whose refined height reaches `threshold`.
///
/// Every interior grid maximum is refined by golden-section search on the
/// resolvent between its grid neighbours, so narrow windows are found even
/// when the grid straddles them. Without free-space loss the search minimizes
/// the reflection instead, which vanishes linearly at a window and so pins
/// its position far below the resolution of `1 − T`.
pub fn find_transparency_windows(sweep: &SweepResult, threshold: f64) -> Vec<Feature> {
    let model = ResolventModel::new(&sweep.config);
    let transmission = sweep.transmission();
    let features = if sweep.config.gamma_f() == 0.0 {
        let reflection = |d: f64| model.at_detuning(d).map_or(f64::NAN, |s| s.reflection);
        refine(&sweep.grid, &transmission, |a, b| {
            let (x, _) = golden_section_min(reflection, a, b, 0.0);
            Feature { delta_probe: x, value: model.transmission(x) }
        })
    } else {
        refine_maxima(&sweep.grid, &transmission, |d| model.transmission(d))
    };
    features.into_iter().filter(|f| f.value >= threshold).collect()
}

/// Local absorption maxima, refined on the resolvent.
pub fn find_absorption_peaks(sweep: &SweepResult) -> Vec<Feature> {
    let model = ResolventModel::new(&sweep.config);
    refine_maxima(&sweep.grid, &sweep.absorption(), |d| model.absorption(d))
        .into_iter()
        .filter(|f| f.value > 0.0)
        .collect()
}

pub(crate) fn refine_maxima<F>(grid: &[f64], values: &[f64], f: F) -> Vec<Feature>
where
    F: Fn(f64) -> f64 + Sync,
{
    refine(grid, values, |a, b| {
        let (x, value) = golden_section_max(&f, a, b, REFINE_TOL);
        Feature { delta_probe: x, value }
    })
}

/// Runs `search` on the bracket around every interior grid maximum.
fn refine<S>(grid: &[f64], values: &[f64], search: S) -> Vec<Feature>
where
    S: Fn(f64, f64) -> Feature + Sync,
{
    let candidates: Vec<usize> = (1..grid.len().saturating_sub(1))
        .filter(|&i| {
            let (a, b, c) = (values[i - 1], values[i], values[i + 1]);
            a.is_finite() && b.is_finite() && c.is_finite() && b > a && b >= c
        })
        .collect();
    let mut features: Vec<Feature> = candidates
        .par_iter()
        .map(|&i| search(grid[i - 1], grid[i + 1]))
        .filter(|f| f.value.is_finite())
        .collect();
    features.sort_by(|a, b| a.delta_probe.total_cmp(&b.delta_probe));
    features.dedup_by(|b, a| (b.delta_probe - a.delta_probe).abs() < MERGE_TOL);
    features
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_atom_sweep_has_zeros_and_window() {
        let config = ArrayConfig::bragg(vec![0.1, 0.0]).unwrap();
        let sweep = sweep_spectrum(&config, -0.2, 0.3, 2001).unwrap();
        let t = sweep.transmission();
        let at = |d: f64| {
            let i = sweep.grid.iter().position(|&g| (g - d).abs() < 1e-12).unwrap();
            t[i]
        };
        assert!(at(0.0) < 1e-20);
        assert!(at(0.1) < 1e-12);
        assert!((at(0.05) - 1.0).abs() < 1e-12);
        assert_eq!(sweep.windows.len(), 1);
        assert!((sweep.windows[0].delta_probe - 0.05).abs() < 1e-14);
        assert!(sweep.absorption_peaks.is_empty());
    }

    #[test]
    fn single_atom_dip() {
        let sweep = sweep_spectrum(&ArrayConfig::homogeneous(1).unwrap(), -1.0, 1.0, 201).unwrap();
        let t = sweep.transmission();
        let min = t.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(min < 1e-30);
        assert_eq!(t[100], min);
        assert!(sweep.windows.is_empty());
    }

    #[test]
    fn homogeneous_array_has_no_window() {
        let sweep = sweep_spectrum(&ArrayConfig::homogeneous(6).unwrap(), -3.0, 3.0, 601).unwrap();
        assert!(sweep.windows.is_empty());
    }

    #[test]
    fn ten_atom_window_position() {
        let mut shifts = vec![0.0; 10];
        shifts[0] = 0.5;
        let sweep = sweep_spectrum(&ArrayConfig::bragg(shifts).unwrap(), -0.2, 0.7, 2001).unwrap();
        assert_eq!(sweep.windows.len(), 1);
        assert!((sweep.windows[0].delta_probe - 0.45).abs() < 1e-14);
        assert!((sweep.windows[0].value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_shift_array_has_two_windows() {
        let config = ArrayConfig::bragg(vec![0.1, -0.1, 0.0, 0.0]).unwrap();
        let sweep = sweep_spectrum(&config, -0.2, 0.2, 2001).unwrap();
        assert_eq!(sweep.windows.len(), 2);
    }

    #[test]
    fn bad_arguments() {
        let config = ArrayConfig::homogeneous(2).unwrap();
        assert!(sweep_spectrum(&config, 0.0, 1.0, 1).is_err());
        assert!(sweep_spectrum(&config, 1.0, 0.0, 10).is_err());
        assert!(sweep_spectrum(&config, f64::NAN, 0.0, 10).is_err());
    }

    #[test]
    fn probe_on_a_dark_level_is_not_a_gap() {
        // ω₀ is both the dark level and the superradiant resonance
        let config = ArrayConfig::homogeneous(2).unwrap();
        let sweep = sweep_spectrum(&config, -1.0, 1.0, 3).unwrap();
        assert_eq!(sweep.gaps(), 0);
        let mid = sweep.points[1].unwrap();
        assert!(mid.t.norm() < 1e-12);
        assert!((mid.r + 1.0).norm() < 1e-12);
    }
}
