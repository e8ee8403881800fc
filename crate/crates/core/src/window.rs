//! The compact ball on which subgroups are compared.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Samples budgeted for covering a family of dimension 3 or 4 inside the ball.
const BUDGET_3D: f64 = 3000.0;
const BUDGET_4D: f64 = 4000.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub radius: f64,
    pub mesh: f64,
}

impl Default for Window {
    fn default() -> Self {
        Window { radius: 3.0, mesh: 0.05 }
    }
}

impl Window {
    /// Requires `radius > 0` and `0 < mesh ≤ radius / 4`.
    pub fn new(radius: f64, mesh: f64) -> Result<Self> {
        let w = Window { radius, mesh };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::InvalidWindow(format!("radius must be positive, got {}", self.radius)));
        }
        if !(self.mesh.is_finite() && self.mesh > 0.0 && self.mesh <= self.radius / 4.0) {
            return Err(Error::InvalidWindow(format!(
                "mesh must lie in (0, radius/4], got {} with radius {}",
                self.mesh, self.radius
            )));
        }
        Ok(())
    }

    /// Cover fineness actually achieved for a family of dimension `k`.
    ///
    /// Up to dimension 2 this is the mesh. Beyond that a grid at the nominal mesh
    /// would need millions of points, so the cover is coarsened until the ball's
    /// volume is spread over a fixed sample budget.
    pub fn effective_mesh(&self, k: usize) -> f64 {
        let r = self.radius;
        let budgeted = match k {
            0..=2 => return self.mesh,
            3 => (4.0 / 3.0 * std::f64::consts::PI * r.powi(3) / BUDGET_3D).cbrt(),
            _ => (std::f64::consts::PI.powi(2) / 2.0 * r.powi(4) / BUDGET_4D).powf(0.25),
        };
        self.mesh.max(budgeted)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Window::new(3.0, 0.05).is_ok());
        assert!(Window::new(3.0, 0.75).is_ok());
        assert!(Window::new(3.0, 0.76).is_err());
        assert!(Window::new(0.0, 0.01).is_err());
        assert!(Window::new(1.0, 0.0).is_err());
        assert!(Window::new(f64::NAN, 0.1).is_err());
    }

    #[test]
    fn effective_mesh_is_monotone_in_dimension() {
        let w = Window::default();
        assert_eq!(w.effective_mesh(1), 0.05);
        assert_eq!(w.effective_mesh(2), 0.05);
        assert!(w.effective_mesh(3) > 0.05);
        assert!(w.effective_mesh(4) >= w.effective_mesh(3));
    }
}
