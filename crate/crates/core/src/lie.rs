//! The Lie algebra `sl(2,R) ⋉ R²` and its exponential map.
//!
//! A traceless `X` satisfies `X² = z·I` with `z = −det X`, so every power series in
//! `X` collapses to `f(z)·I + g(z)·X`.

use crate::group::{GroupElement, Mat2, Vec2};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieAlgebraElement {
    pub m: Mat2,
    pub w: Vec2,
}

impl LieAlgebraElement {
    pub const fn new(m: Mat2, w: Vec2) -> Self {
        LieAlgebraElement { m, w }
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.m.a11, self.m.a12, self.m.a21, self.m.a22, self.w.x, self.w.y]
    }

    pub fn from_array(a: &[f64]) -> Self {
        LieAlgebraElement::new(Mat2::new(a[0], a[1], a[2], a[3]), Vec2::new(a[4], a[5]))
    }

    pub fn scale(&self, s: f64) -> Self {
        LieAlgebraElement::new(self.m.scale(s), self.w * s)
    }

    /// Frobenius plus Euclidean, the linearisation of `group::dist` at the identity.
    pub fn norm(&self) -> f64 {
        self.m.frobenius() + self.w.norm()
    }

    /// Adjoint action of `h = (g, v)`: `(gXg⁻¹, g w − gXg⁻¹ v)`.
    pub fn adjoint(&self, h: &GroupElement) -> Self {
        let g = h.matrix;
        let gm = g * self.m * g.adjugate();
        LieAlgebraElement::new(gm, g * self.w - gm * h.translation)
    }
}

// cosh(√z), sinh(√z)/√z and (cosh(√z) − 1)/z, continued through z ≤ 0 by cos/sin.
fn c0(z: f64) -> f64 {
    if z.abs() < 1e-3 {
        1.0 + z / 2.0 + z * z / 24.0 + z * z * z / 720.0
    } else if z > 0.0 {
        z.sqrt().cosh()
    } else {
        (-z).sqrt().cos()
    }
}

fn s1(z: f64) -> f64 {
    if z.abs() < 1e-3 {
        1.0 + z / 6.0 + z * z / 120.0 + z * z * z / 5040.0
    } else if z > 0.0 {
        let r = z.sqrt();
        r.sinh() / r
    } else {
        let r = (-z).sqrt();
        r.sin() / r
    }
}

fn c2(z: f64) -> f64 {
    if z.abs() < 1e-3 {
        0.5 + z / 24.0 + z * z / 720.0 + z * z * z / 40320.0
    } else {
        (c0(z) - 1.0) / z
    }
}

pub fn exp(x: &LieAlgebraElement) -> GroupElement {
    let z = -x.m.det();
    let g = Mat2::IDENTITY.scale(c0(z)) + x.m.scale(s1(z));
    let phi = Mat2::IDENTITY.scale(s1(z)) + x.m.scale(c2(z));
    GroupElement::new(g, phi * x.w)
}

/// Principal logarithm. `None` when `trace g ≤ −2` (no real logarithm in the
/// identity component's exponential image, e.g. `−I`), or when the result would be
/// ill-conditioned near the cut (`θ` close to π).
pub fn log(x: &GroupElement) -> Option<LieAlgebraElement> {
    let g = x.matrix;
    let half = g.trace() / 2.0;
    if !half.is_finite() || half <= -1.0 + 1e-9 {
        return None;
    }
    let z = if half >= 1.0 {
        let d = half.acosh();
        d * d
    } else {
        let t = half.acos();
        -t * t
    };
    let m = (g - Mat2::IDENTITY.scale(half)).scale(1.0 / s1(z));
    let phi = Mat2::IDENTITY.scale(s1(z)) + m.scale(c2(z));
    let w = phi.inverse()? * x.translation;
    Some(LieAlgebraElement::new(m, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::dist;

    #[test]
    fn exp_of_nilpotent_matches_heisenberg_formula() {
        // exp(t(aE, (c, b))) = ([[1, at], [0, 1]], (ct + abt²/2, bt))
        let (a, b, c, t) = (1.0, 2.0, 3.0, 1.0);
        let x = LieAlgebraElement::new(Mat2::new(0.0, a, 0.0, 0.0), Vec2::new(c, b)).scale(t);
        let e = exp(&x);
        assert_eq!(e.matrix, Mat2::upper_unipotent(a * t));
        assert!((e.translation.x - 4.0).abs() < 1e-14);
        assert!((e.translation.y - 2.0).abs() < 1e-14);
    }

    #[test]
    fn exp_of_rotation_generator() {
        let theta = 0.7;
        let x = LieAlgebraElement::new(Mat2::new(0.0, -theta, theta, 0.0), Vec2::ZERO);
        let e = exp(&x);
        assert!((e.matrix - Mat2::rotation(theta)).frobenius() < 1e-14);
    }

    #[test]
    fn log_inverts_exp() {
        let samples = [
            [0.3, 0.2, -0.5, -0.3, 1.0, -2.0],
            [1.2, 0.4, 0.1, -1.2, 0.5, 0.5],
            [0.0, 2.0, -1.0, 0.0, -1.0, 3.0],
            [0.0, 1.0, 0.0, 0.0, 2.0, 0.0],
            [1e-5, 0.0, 0.0, -1e-5, 1e-3, 0.0],
        ];
        for s in samples {
            let x = LieAlgebraElement::from_array(&s);
            let back = log(&exp(&x)).unwrap();
            for (u, v) in back.to_array().iter().zip(s.iter()) {
                assert!((u - v).abs() < 1e-10, "{s:?} -> {:?}", back.to_array());
            }
        }
        assert!(log(&GroupElement::from_matrix(Mat2::IDENTITY.scale(-1.0))).is_none());
    }

    #[test]
    fn adjoint_is_derivative_of_conjugation() {
        let h = GroupElement::new(Mat2::new(2.0, 1.0, 1.0, 1.0), Vec2::new(0.5, -1.0));
        let x = LieAlgebraElement::from_array(&[0.1, 0.3, -0.2, -0.1, 0.4, 0.2]);
        let t = 1e-6;
        let conj = crate::group::conj(&h, &exp(&x.scale(t)));
        let lin = exp(&x.adjoint(&h).scale(t));
        assert!(dist(&conj, &lin) < 1e-10);
    }
}
