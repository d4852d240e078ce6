//! `start:stop:step` grid arguments.

use anyhow::{bail, Context, Result};

/// An inclusive arithmetic progression parsed from `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    start: f64,
    stop: f64,
    step: f64,
}

const MAX_POINTS: usize = 1 << 20;

impl Grid {
    /// Parses `start:stop:step` with `step > 0` and `stop ≥ start`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            bail!("grid {text:?} must have the form start:stop:step");
        }
        let number = |part: &str| {
            part.parse::<f64>()
                .with_context(|| format!("grid component {part:?} is not a number"))
        };
        let (start, stop, step) = (number(parts[0])?, number(parts[1])?, number(parts[2])?);
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            bail!("grid {text:?} has a non-finite component");
        }
        if step <= 0.0 {
            bail!("grid step must be positive, got {step}");
        }
        if stop < start {
            bail!("grid stop {stop} lies before start {start}");
        }
        let grid = Self { start, stop, step };
        if grid.len() > MAX_POINTS {
            bail!("grid {text:?} has {} points, more than {MAX_POINTS}", grid.len());
        }
        Ok(grid)
    }

    /// Number of points, counting both endpoints when the step divides
    /// the span (a small slack absorbs decimal rounding).
    pub fn len(&self) -> usize {
        ((self.stop - self.start) / self.step + 1e-9) as usize + 1
    }

    /// The points `start + i·step`.
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.start + i as f64 * self.step)
    }
}
