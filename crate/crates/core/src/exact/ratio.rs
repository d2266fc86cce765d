use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximize `(c + a·x + b·y) / max(2 - x, 1 + y)` over `0 <= x, y <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioProgram {
    pub constant: f64,
    pub x_coeff: f64,
    pub y_coeff: f64,
}

impl RatioProgram {
    pub const fn new(constant: f64, x_coeff: f64, y_coeff: f64) -> Self {
        RatioProgram {
            constant,
            x_coeff,
            y_coeff,
        }
    }

    /// `2 - (x/2 - 2y)/5`: path cover and bad vertices.
    pub const GRAPHIC_BAD_VERTICES: RatioProgram = RatioProgram::new(2.0, -0.1, 0.4);
    /// `2 - (x/2 - y)/3`: path cover and bridges.
    pub const GRAPHIC_BRIDGES: RatioProgram = RatioProgram::new(2.0, -1.0 / 6.0, 1.0 / 3.0);
    /// `2 - (x - y)/3`: matching and bridges.
    pub const GRAPHIC_MATCHING: RatioProgram = RatioProgram::new(2.0, -1.0 / 3.0, 1.0 / 3.0);

    pub fn value(&self, x: f64, y: f64) -> f64 {
        let num = self.constant + self.x_coeff * x + self.y_coeff * y;
        num / (2.0 - x).max(1.0 + y)
    }
}

fn grid_max(p: &RatioProgram, x0: f64, x1: f64, y0: f64, y1: f64, step: f64) -> (f64, f64, f64) {
    let nx = ((x1 - x0) / step).round() as usize;
    let ny = ((y1 - y0) / step).round() as usize;
    let mut best = (f64::NEG_INFINITY, x0, y0);
    for i in 0..=nx {
        let x = (x0 + i as f64 * step).min(x1);
        for j in 0..=ny {
            let y = (y0 + j as f64 * step).min(y1);
            let v = p.value(x, y);
            if v > best.0 {
                best = (v, x, y);
            }
        }
    }
    best
}

/// Grid maximum of the program, refined locally to a `1e-6` step.
pub fn solve_ratio_program(p: &RatioProgram, grid_step: f64) -> Result<f64> {
    if !(grid_step > 0.0 && grid_step <= 1e-4) {
        return Err(Error::InvalidParameter(format!(
            "grid step must be in (0, 1e-4], got {grid_step}"
        )));
    }
    let (mut best, mut x, mut y) = grid_max(p, 0.0, 1.0, 0.0, 1.0, grid_step);
    let mut step = grid_step;
    while step > 1e-6 {
        let fine = step / 10.0;
        let (v, bx, by) = grid_max(
            p,
            (x - step).max(0.0),
            (x + step).min(1.0),
            (y - step).max(0.0),
            (y + step).min(1.0),
            fine,
        );
        if v > best {
            (best, x, y) = (v, bx, by);
        }
        step = fine;
    }
    Ok(best)
}
