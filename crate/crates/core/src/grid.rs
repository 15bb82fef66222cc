//! Uniform frequency/detuning grids.

use crate::error::{Error, Result};

/// Points in the default bare-population sweep.
pub const POPULATION_GRID_POINTS: usize = 801;
/// Half-width of the default population sweep in units of Ω_R.
pub const POPULATION_GRID_SPAN: f64 = 4.0;
/// Points in the default spectral grid.
pub const SPECTRUM_GRID_POINTS: usize = 2001;
/// Half-width of the default spectral grid in units of Ω_R.
pub const SPECTRUM_GRID_SPAN: f64 = 2.5;
/// Largest accepted grid.
pub const MAX_GRID_POINTS: usize = 1_000_000;

/// `count` evenly spaced points from `start` to `stop` inclusive.
///
/// A single point is allowed only when `start == stop`.
pub fn uniform(start: f64, stop: f64, count: usize) -> Result<Vec<f64>> {
    if !start.is_finite() || !stop.is_finite() {
        return Err(Error::InvalidGrid("non-finite endpoint".into()));
    }
    if count == 0 || count > MAX_GRID_POINTS {
        return Err(Error::InvalidGrid(format!(
            "count {count} outside [1, {MAX_GRID_POINTS}]"
        )));
    }
    if count == 1 {
        if start != stop {
            return Err(Error::InvalidGrid(
                "a single-point grid needs start == stop".into(),
            ));
        }
        return Ok(vec![start]);
    }
    if start >= stop {
        return Err(Error::InvalidGrid(format!("start {start} >= stop {stop}")));
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            if i == count - 1 {
                stop
            } else {
                start + step * i as f64
            }
        })
        .collect())
}

/// Symmetric grid of `count` points over `[−span·Ω_R, span·Ω_R]`.
///
/// The grid is exactly antisymmetric: `g[i] == -g[count - 1 - i]`.
pub fn symmetric(omega_r: f64, span: f64, count: usize) -> Result<Vec<f64>> {
    let g = uniform(-span * omega_r, span * omega_r, count)?;
    let n = g.len();
    Ok((0..n).map(|i| 0.5 * (g[i] - g[n - 1 - i])).collect())
}

/// The 801-point sweep over δ ∈ [−4Ω_R, 4Ω_R].
pub fn default_population_grid(omega_r: f64) -> Result<Vec<f64>> {
    symmetric(omega_r, POPULATION_GRID_SPAN, POPULATION_GRID_POINTS)
}

/// The 2001-point spectral grid over [−2.5Ω_R, 2.5Ω_R].
pub fn default_spectrum_grid(omega_r: f64) -> Result<Vec<f64>> {
    symmetric(omega_r, SPECTRUM_GRID_SPAN, SPECTRUM_GRID_POINTS)
}

/// Checks that values are finite and strictly increasing.
pub fn ensure_sorted(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("empty grid".into()));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidGrid("non-finite grid value".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid("grid is not strictly increasing".into()));
    }
    Ok(())
}

/// Step of a uniform grid, or `None` if the spacing varies by more than
/// `1e-9` relative.
pub fn uniform_step(grid: &[f64]) -> Option<f64> {
    if grid.len() < 2 {
        return None;
    }
    let step = (grid[grid.len() - 1] - grid[0]) / (grid.len() - 1) as f64;
    let uniform = grid
        .windows(2)
        .all(|w| ((w[1] - w[0]) - step).abs() <= 1e-9 * step.abs().max(1e-300));
    uniform.then_some(step)
}
