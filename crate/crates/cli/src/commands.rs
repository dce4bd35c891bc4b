use braggscat_core::analysis::{
    cia_operating_points, cia_shift_search, comb_config, find_transparency_windows, subradiant_decay_map,
    sweep_spectrum, SweepResult, COMB_THRESHOLD, DEFAULT_NPTS, DEFAULT_WINDOW_THRESHOLD,
};
use braggscat_core::numerics::linspace;
use braggscat_core::{absorption_extrema, build_effective_hamiltonian, eigendecompose, ArrayConfig};
use serde_json::{json, Value};

use crate::config::{core_validation, RunConfig};
use crate::error::{CliError, CliResult};
use crate::table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Spectrum,
    Eigs,
    Absorption,
    Extrema,
    Decaymap,
    Comb,
    CiaSearch,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Eigs => "eigs",
            Command::Absorption => "absorption",
            Command::Extrema => "extrema",
            Command::Decaymap => "decaymap",
            Command::Comb => "comb",
            Command::CiaSearch => "cia-search",
        }
    }
}

pub const SPECTRUM_COLUMNS: [&str; 8] = ["delta_probe", "re_t", "im_t", "re_r", "im_r", "T", "R", "eta"];
pub const EIGS_COLUMNS: [&str; 9] =
    ["index", "class", "re_E", "im_E", "decay", "re_xi", "im_xi", "re_xi_tilde", "im_xi_tilde"];
pub const DECAYMAP_COLUMNS: [&str; 4] = ["delta1", "delta2", "gamma_mode1", "gamma_mode2"];
pub const FEATURE_COLUMNS: [&str; 3] = ["kind", "delta_probe", "value"];

pub struct Output {
    pub table: Table,
    pub features: Option<Table>,
    pub meta: Value,
}

pub fn run(command: Command, config: &RunConfig) -> CliResult<Output> {
    let mut out = match command {
        Command::Spectrum => spectrum(config, &config.array_config()?, DEFAULT_WINDOW_THRESHOLD),
        Command::Comb => comb(config),
        Command::Eigs => eigs(config),
        Command::Absorption => absorption(config),
        Command::Extrema => extrema(config),
        Command::Decaymap => decaymap(config),
        Command::CiaSearch => cia_search(config),
    }?;
    out.meta["command"] = json!(command.name());
    out.meta["version"] = json!(env!("CARGO_PKG_VERSION"));
    Ok(out)
}

fn scenario_meta(array: &ArrayConfig) -> Value {
    json!({
        "n": array.n(),
        "gamma": array.gamma(),
        "gamma_f": array.gamma_f(),
        "omega0": array.omega0(),
        "is_bragg": array.is_bragg(),
        "outside_paper_regime": array.outside_paper_regime(),
    })
}

/// Probe window covering every shift with a margin of at least Γ.
fn default_span(array: &ArrayConfig) -> (f64, f64) {
    let lo = array.shifts().iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = array.shifts().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let margin = (0.1 * (hi - lo)).max(array.gamma());
    (lo - margin, hi + margin)
}

fn spectrum_table(sweep: &SweepResult) -> Table {
    let mut table = Table::new(&SPECTRUM_COLUMNS);
    for (&d, point) in sweep.grid.iter().zip(&sweep.points) {
        let row = match point {
            Some(s) => vec![d, s.t.re, s.t.im, s.r.re, s.r.im, s.transmission, s.reflection, s.eta],
            None => std::iter::once(d).chain([f64::NAN; 7]).collect(),
        };
        table.push(row.into_iter().map(Into::into).collect());
    }
    table
}

fn spectrum(config: &RunConfig, array: &ArrayConfig, default_threshold: f64) -> CliResult<Output> {
    let (lo, hi) = config.span.map_or_else(|| default_span(array), |[a, b]| (a, b));
    let npts = config.grid.unwrap_or(DEFAULT_NPTS);
    let threshold = config.threshold.unwrap_or(default_threshold);
    let sweep = sweep_spectrum(array, lo, hi, npts).map_err(core_validation)?;
    let windows = find_transparency_windows(&sweep, threshold);

    let mut features = Table::new(&FEATURE_COLUMNS);
    for w in &windows {
        features.push(vec!["window".into(), w.delta_probe.into(), w.value.into()]);
    }
    for p in &sweep.absorption_peaks {
        features.push(vec!["absorption_peak".into(), p.delta_probe.into(), p.value.into()]);
    }
    let mut meta = scenario_meta(array);
    meta["span"] = json!([lo, hi]);
    meta["grid"] = json!(npts);
    meta["threshold"] = json!(threshold);
    meta["gaps"] = json!(sweep.gaps());
    meta["windows"] = json!(windows.len());
    Ok(Output { table: spectrum_table(&sweep), features: Some(features), meta })
}

fn comb(config: &RunConfig) -> CliResult<Output> {
    let n = config.n()?;
    let delta = match (&config.shift_pattern, config.delta) {
        (_, Some(d)) => d,
        (Some(crate::config::ShiftPattern::EqualDifference { delta }), None) => *delta,
        _ => {
            return Err(CliError::validation(
                "shift_pattern",
                "comb needs an equal_difference shift_pattern or delta",
            ))
        }
    };
    let positions = config.array_config()?.positions().to_vec();
    let shifts = comb_config(n, delta).map_err(core_validation)?.shifts().to_vec();
    let array = ArrayConfig::new(config.omega0, config.gamma, config.gamma_f, shifts, positions)
        .map_err(core_validation)?;
    let mut out = spectrum(config, &array, COMB_THRESHOLD)?;
    out.meta["delta"] = json!(delta);
    Ok(out)
}

fn eigs(config: &RunConfig) -> CliResult<Output> {
    let array = config.array_config()?;
    let system = eigendecompose(&build_effective_hamiltonian(&array))?;
    let mut table = Table::new(&EIGS_COLUMNS);
    for (k, m) in system.modes.iter().enumerate() {
        table.push(vec![
            k.into(),
            m.class.as_str().into(),
            (m.energy.re - array.omega0()).into(),
            m.energy.im.into(),
            m.decay().into(),
            m.xi.re.into(),
            m.xi.im.into(),
            m.xi_tilde.re.into(),
            m.xi_tilde.im.into(),
        ]);
    }
    let mut meta = scenario_meta(&array);
    meta["ep_adjacent"] = json!(system.ep_adjacent);
    Ok(Output { table, features: None, meta })
}

fn absorption(config: &RunConfig) -> CliResult<Output> {
    let array = config.array_config()?;
    let gf = config
        .gf_grid
        .as_ref()
        .ok_or_else(|| CliError::validation("gf_grid", "absorption needs gf_grid"))?
        .values("gf_grid")?;
    let (lo, hi) = config.span.map_or_else(|| default_span(&array), |[a, b]| (a, b));
    let npts = config.grid.unwrap_or(DEFAULT_NPTS);
    let ops = cia_operating_points(&array, &gf, (lo, hi), npts).map_err(core_validation)?;

    let columns = ["gamma_f", "branch", "delta_probe", "eta_max"];
    let mut table = Table::new(&columns);
    for r in &ops.rows {
        table.push(vec![r.gamma_f.into(), r.branch.into(), r.delta_probe.into(), r.eta_max.into()]);
    }
    let mut features = Table::new(&columns);
    for r in &ops.stationary {
        features.push(vec![r.gamma_f.into(), r.branch.into(), r.delta_probe.into(), r.eta_max.into()]);
    }
    let mut meta = scenario_meta(&array);
    meta["span"] = json!([lo, hi]);
    meta["grid"] = json!(npts);
    Ok(Output { table, features: Some(features), meta })
}

fn extrema(config: &RunConfig) -> CliResult<Output> {
    let delta = match (config.delta, &config.shifts) {
        (Some(d), _) => d,
        (None, Some(s)) if s.len() == 2 => s[0] - s[1],
        _ => return Err(CliError::validation("delta", "extrema needs delta or two shifts")),
    };
    let ext = absorption_extrema(config.gamma, delta).map_err(core_validation)?;
    let mut table = Table::new(&["case", "gamma_f", "eta", "d_eta_d_gamma_f"]);
    let slopes = ext.stationarity_residuals();
    for (k, label) in ["I", "II", "III"].into_iter().enumerate() {
        table.push(vec![label.into(), ext.values()[k].into(), ext.etas()[k].into(), slopes[k].into()]);
    }
    let meta = json!({ "gamma": config.gamma, "delta": delta });
    Ok(Output { table, features: None, meta })
}

fn decaymap(config: &RunConfig) -> CliResult<Output> {
    let n = config.n()?;
    let [a, b] = config.shift_atoms.unwrap_or([0, 1]);
    let default = || linspace(-0.5, 0.5, 41);
    let d1 = config.d1_grid.as_ref().map_or_else(|| Ok(default()), |g| g.values("d1_grid"))?;
    let d2 = config.d2_grid.as_ref().map_or_else(|| Ok(default()), |g| g.values("d2_grid"))?;
    let map = subradiant_decay_map(n, (a, b), &d1, &d2, config.gamma).map_err(core_validation)?;

    let mut table = Table::new(&DECAYMAP_COLUMNS);
    let mut features = Table::new(&["delta1", "delta2"]);
    for (i, &x) in d1.iter().enumerate() {
        for (j, &y) in d2.iter().enumerate() {
            let [g1, g2] = map.at(i, j);
            table.push(vec![x.into(), y.into(), g1.into(), g2.into()]);
            if map.is_ambiguous(i, j) {
                features.push(vec![x.into(), y.into()]);
            }
        }
    }
    let meta = json!({
        "n": n,
        "gamma": config.gamma,
        "shift_atoms": [a, b],
        "ambiguous_cells": features.rows.len(),
    });
    Ok(Output { table, features: Some(features), meta })
}

fn cia_search(config: &RunConfig) -> CliResult<Output> {
    let n = config.n()?;
    let grid = config
        .delta_grid
        .as_ref()
        .ok_or_else(|| CliError::validation("delta_grid", "cia-search needs delta_grid"))?
        .values("delta_grid")?;
    let search = cia_shift_search(n, config.gamma_f, &grid).map_err(core_validation)?;
    let mut table = Table::new(&["delta", "eta_min_peak"]);
    for &(d, v) in &search.profile {
        table.push(vec![d.into(), v.into()]);
    }
    let mut features = Table::new(&["delta_star", "eta_star"]);
    features.push(vec![search.delta_star.into(), search.eta_star.into()]);
    let meta = json!({ "n": n, "gamma_f": config.gamma_f });
    Ok(Output { table, features: Some(features), meta })
}
