//! Sweeps, feature detection and parameter searches.

mod cia;
mod comb;
mod decay_map;
mod sweep;

pub use cia::{cia_operating_points, cia_shift_search, CiaBranchPoint, CiaOperatingPoints, ShiftSearch};
pub use comb::{comb_config, transparency_vs_subradiant_offset, COMB_THRESHOLD};
pub use decay_map::{subradiant_decay_map, DecayMap};
pub use sweep::{
    find_absorption_peaks, find_transparency_windows, sweep_spectrum, Feature, SweepResult,
    DEFAULT_NPTS, DEFAULT_WINDOW_THRESHOLD,
};
