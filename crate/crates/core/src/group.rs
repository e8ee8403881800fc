//! Elements of the affine special-linear group `SL(2,R) ⋉ R²`.
//!
//! An element is a pair `(g, v)` acting on the plane by `p ↦ g p + v`, so the
//! product is `(g, v)(g', v') = (g g', v + g v')`.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Tolerance on `|det(I - g)|` below which 1 is treated as an eigenvalue of `g`.
pub const SINGULAR_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Scalar cross product `x₁y₂ − y₁x₂`.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

/// Real 2×2 matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);
    pub const ZERO: Mat2 = Mat2::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn from_rows(rows: [[f64; 2]; 2]) -> Self {
        Mat2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        [[self.a11, self.a12], [self.a21, self.a22]]
    }

    pub fn diag(a: f64, d: f64) -> Self {
        Mat2::new(a, 0.0, 0.0, d)
    }

    /// Counter-clockwise rotation by `theta`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Mat2::new(c, -s, s, c)
    }

    /// `[[1, s], [0, 1]]`
    pub fn upper_unipotent(s: f64) -> Self {
        Mat2::new(1.0, s, 0.0, 1.0)
    }

    /// `[[1, 0], [s, 1]]`
    pub fn lower_unipotent(s: f64) -> Self {
        Mat2::new(1.0, 0.0, s, 1.0)
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a11, self.a21, self.a12, self.a22)
    }

    /// Adjugate; the inverse when `det = 1`.
    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(self.a22, -self.a12, -self.a21, self.a11)
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        Some(self.adjugate().scale(1.0 / d))
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        Mat2::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }

    pub fn frobenius(&self) -> f64 {
        (self.a11 * self.a11 + self.a12 * self.a12 + self.a21 * self.a21 + self.a22 * self.a22)
            .sqrt()
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.a11 * v.x + self.a12 * v.y,
            self.a21 * v.x + self.a22 * v.y,
        )
    }

    pub fn col(&self, j: usize) -> Vec2 {
        match j {
            0 => Vec2::new(self.a11, self.a21),
            _ => Vec2::new(self.a12, self.a22),
        }
    }

    pub fn from_cols(c0: Vec2, c1: Vec2) -> Mat2 {
        Mat2::new(c0.x, c1.x, c0.y, c1.y)
    }

    pub fn is_finite(&self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a21.is_finite() && self.a22.is_finite()
    }

    /// Rescales by `1/sqrt(det)` when the determinant has drifted from 1 by more
    /// than both 1e-12 and the rounding error of the determinant itself.
    pub fn renormalized(self) -> Mat2 {
        let d = self.det();
        let rounding = 4.0 * f64::EPSILON * ((self.a11 * self.a22).abs() + (self.a12 * self.a21).abs());
        if d > 0.0 && (d - 1.0).abs() > 1e-12_f64.max(rounding) {
            self.scale(1.0 / d.sqrt())
        } else {
            self
        }
    }
}

impl Default for Mat2 {
    fn default() -> Self {
        Mat2::IDENTITY
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        self.apply(v)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a11 + o.a11, self.a12 + o.a12, self.a21 + o.a21, self.a22 + o.a22)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}

/// `(g, v)` with `g ∈ SL(2,R)` and `v ∈ R²`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    pub matrix: Mat2,
    pub translation: Vec2,
}

impl Default for GroupElement {
    fn default() -> Self {
        GroupElement::IDENTITY
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.matrix;
        write!(
            f,
            "([[{:.6}, {:.6}], [{:.6}, {:.6}]], ({:.6}, {:.6}))",
            m.a11, m.a12, m.a21, m.a22, self.translation.x, self.translation.y
        )
    }
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        matrix: Mat2::IDENTITY,
        translation: Vec2::ZERO,
    };

    pub const fn new(matrix: Mat2, translation: Vec2) -> Self {
        GroupElement { matrix, translation }
    }

    pub const fn from_matrix(matrix: Mat2) -> Self {
        GroupElement::new(matrix, Vec2::ZERO)
    }

    pub const fn from_translation(translation: Vec2) -> Self {
        GroupElement::new(Mat2::IDENTITY, translation)
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        mul(self, other)
    }

    pub fn inv(&self) -> GroupElement {
        inv(self)
    }

    pub fn is_finite(&self) -> bool {
        self.matrix.is_finite() && self.translation.is_finite()
    }

    /// Flattened `[a11, a12, a21, a22, x, y]`.
    pub fn to_array(&self) -> [f64; 6] {
        let m = &self.matrix;
        [m.a11, m.a12, m.a21, m.a22, self.translation.x, self.translation.y]
    }
}

pub fn mul(x: &GroupElement, y: &GroupElement) -> GroupElement {
    GroupElement {
        matrix: (x.matrix * y.matrix).renormalized(),
        translation: x.translation + x.matrix * y.translation,
    }
}

pub fn inv(x: &GroupElement) -> GroupElement {
    let g_inv = x.matrix.adjugate();
    GroupElement {
        matrix: g_inv,
        translation: -(g_inv * x.translation),
    }
}

/// `h · x · h⁻¹`
pub fn conj(h: &GroupElement, x: &GroupElement) -> GroupElement {
    mul(&mul(h, x), &inv(h))
}

/// `(I, v)(g, 0)(I, v)⁻¹ = (g, v − g v)`.
pub fn conj_translation(v: Vec2, g: &Mat2) -> GroupElement {
    GroupElement::new(*g, v - *g * v)
}

/// Returns `(I − g)⁻¹ v`, or `None` when `|det(I − g)| ≤ SINGULAR_TOL`, i.e. when 1
/// is (numerically) an eigenvalue of `g`.
pub fn fixed_point_predict(g: &Mat2, v: Vec2) -> Option<Vec2> {
    let m = Mat2::IDENTITY - *g;
    let d = m.det();
    if d.abs() <= SINGULAR_TOL {
        return None;
    }
    Some(m.adjugate().scale(1.0 / d) * v)
}

/// For `det g = 1`, both eigenvalues equal 1 iff `trace g = 2`.
pub fn is_unipotent(g: &Mat2, tol: f64) -> bool {
    (g.trace() - 2.0).abs() <= tol
}

/// Frobenius distance of the matrix parts plus Euclidean distance of translations.
pub fn dist(x: &GroupElement, y: &GroupElement) -> f64 {
    (x.matrix - y.matrix).frobenius() + (x.translation - y.translation).norm()
}

/// Distance from the identity.
pub fn norm(x: &GroupElement) -> f64 {
    dist(x, &GroupElement::IDENTITY)
}
