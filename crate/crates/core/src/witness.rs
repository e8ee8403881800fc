//! Explicit sequences `h_n ∈ g_n H g_n⁻¹` converging to a prescribed point of the
//! limit subgroup. Each constructor returns the conjugator, the element of the base
//! subgroup it conjugates, the conjugated element and the target.

use crate::catalog::compact;
use crate::error::{Error, Result};
use crate::group::{conj, conj_translation, dist, GroupElement, Mat2, Vec2};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub conjugator: GroupElement,
    pub base_element: GroupElement,
    pub element: GroupElement,
    pub target: GroupElement,
}

impl Witness {
    fn new(conjugator: GroupElement, base_element: GroupElement, target: GroupElement) -> Self {
        Witness { conjugator, base_element, element: conj(&conjugator, &base_element), target }
    }

    pub fn error(&self) -> f64 {
        dist(&self.element, &self.target)
    }
}

/// Element of `(I, (α, 0)) · SL(2,R) · (I, (α, 0))⁻¹` close to the target
/// `(u(r), (s, t))`, at distance `O(1/α)`.
pub fn levi_approximator(target: &GroupElement, alpha: f64) -> Result<GroupElement> {
    let m = target.matrix;
    let unipotent = (m.a11 - 1.0).abs() <= 1e-9 && m.a21.abs() <= 1e-9 && (m.a22 - 1.0).abs() <= 1e-9;
    if !unipotent {
        return Err(Error::Witness("target matrix must be upper unipotent".into()));
    }
    let (r, s, t) = (m.a12, target.translation.x, target.translation.y);
    if alpha == s || alpha == 0.0 || !alpha.is_finite() {
        return Err(Error::Witness(format!("alpha = {alpha} makes the diagonal factor singular")));
    }
    let d = Mat2::diag((alpha - s) / alpha, alpha / (alpha - s));
    let l = Mat2::lower_unipotent(-t / alpha);
    let g = d * l * Mat2::upper_unipotent(r);
    Ok(conj_translation(Vec2::new(alpha, 0.0), &g))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CompactCase {
    /// `v_n = (0, n)`, limit `(I, (t, 0))`.
    Vertical,
    /// `v_n = (n, 0)`, limit `(I, (0, t))`.
    Horizontal,
    /// `v_n = (cn, n)`, limit `(I, (−t, ct))`.
    Sloped(f64),
    /// Conjugator `(u(n), 0)`, limit `(u(t), 0)`.
    Unipotent,
    /// Conjugator `(u(n), 0)` at angle π, the element `(−I, 0)`.
    MinusIdentity,
}

pub fn compact_witness(case: CompactCase, t: f64, n: f64) -> Witness {
    let translate = |v: Vec2, zeta: f64, target: Vec2| {
        Witness::new(
            GroupElement::from_translation(v),
            GroupElement::from_matrix(compact(zeta)),
            GroupElement::from_translation(target),
        )
    };
    match case {
        CompactCase::Vertical => translate(Vec2::new(0.0, n), (-t / n).asin(), Vec2::new(t, 0.0)),
        CompactCase::Horizontal => translate(Vec2::new(n, 0.0), (t / n).asin(), Vec2::new(0.0, t)),
        CompactCase::Sloped(c) => translate(Vec2::new(c * n, n), (t / n).asin(), Vec2::new(-t, c * t)),
        CompactCase::Unipotent => {
            // u(s) k(ζ) u(−s) has upper-right entry (1 + s²) sin ζ.
            let zeta = (t / (1.0 + n * n)).asin();
            Witness::new(
                GroupElement::from_matrix(Mat2::upper_unipotent(n)),
                GroupElement::from_matrix(compact(zeta)),
                GroupElement::from_matrix(Mat2::upper_unipotent(t)),
            )
        }
        CompactCase::MinusIdentity => Witness::new(
            GroupElement::from_matrix(Mat2::upper_unipotent(n)),
            GroupElement::from_matrix(compact(std::f64::consts::PI)),
            GroupElement::from_matrix(-Mat2::IDENTITY),
        ),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DiagonalCase {
    /// `s_n = rn`, `β_n = n`, `α_n = (2s_n + d)β_n`; limit in `V_{(−2r, 1, −d)}`.
    HeisenbergSlow { r: f64, d: f64 },
    /// `s_n = n`, `β_n = pn`, `α_n = (2β_n + d)s_n`; limit in
    /// `V_{(a, −pa/2, ad/2)}`.
    HeisenbergFast { a: f64, p: f64, d: f64 },
    /// `v_n = (n, 1)`, limit `(I, (t, 0))`.
    Horizontal,
    /// `v_n = (1, n)`, limit `(I, (0, t))`.
    Vertical,
    /// `v_n = (n, cn)`, limit `(I, (t, −ct))`.
    Sloped(f64),
}

pub fn diagonal_witness(case: DiagonalCase, t: f64, n: f64) -> Witness {
    let build = |s: f64, v: Vec2, b: f64, target: GroupElement| {
        Witness::new(
            GroupElement::new(Mat2::upper_unipotent(s), v),
            GroupElement::from_matrix(Mat2::diag(b, 1.0 / b)),
            target,
        )
    };
    let heisenberg = |a: f64, b: f64, c: f64| {
        GroupElement::new(Mat2::upper_unipotent(a * t), Vec2::new(c * t + a * b * t * t / 2.0, b * t))
    };
    match case {
        DiagonalCase::HeisenbergSlow { r, d } => {
            let (s, beta) = (r * n, n);
            let alpha = (2.0 * s + d) * beta;
            build(s, Vec2::new(alpha, beta), beta / (beta - t), heisenberg(-2.0 * r, 1.0, -d))
        }
        DiagonalCase::HeisenbergFast { a, p, d } => {
            let (s, beta) = (n, p * n);
            let alpha = (2.0 * beta + d) * s;
            let b = 1.0 - a * t / (2.0 * s);
            build(s, Vec2::new(alpha, beta), b, heisenberg(a, -p * a / 2.0, a * d / 2.0))
        }
        DiagonalCase::Horizontal => build(
            0.0,
            Vec2::new(n, 1.0),
            1.0 - t / n,
            GroupElement::from_translation(Vec2::new(t, 0.0)),
        ),
        DiagonalCase::Vertical => build(
            0.0,
            Vec2::new(1.0, n),
            n / (n - t),
            GroupElement::from_translation(Vec2::new(0.0, t)),
        ),
        DiagonalCase::Sloped(c) => build(
            0.0,
            Vec2::new(n, c * n),
            1.0 - t / n,
            GroupElement::from_translation(Vec2::new(t, -c * t)),
        ),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BorelCase {
    /// `v_n = (0, n)`, limit `(I, (x, y))`.
    Vertical,
    /// `v_n = (n, 0)`, limit `(u(y), (x, 0))`.
    Horizontal,
    /// `v_n = (cn, n)`, limit `(I, (x, y))`.
    Sloped(f64),
}

pub fn borel_witness(case: BorelCase, x: f64, y: f64, n: f64) -> Witness {
    let build = |v: Vec2, m: Mat2, target: GroupElement| {
        Witness::new(GroupElement::from_translation(v), GroupElement::from_matrix(m), target)
    };
    let upper = |a: f64, s: f64| Mat2::new(a, s, 0.0, 1.0 / a);
    let pure = GroupElement::from_translation(Vec2::new(x, y));
    match case {
        BorelCase::Vertical => {
            let beta = n;
            build(Vec2::new(0.0, beta), upper(beta / (beta - y), -x / beta), pure)
        }
        BorelCase::Horizontal => {
            let alpha = n;
            let tilde = Mat2::diag(1.0 - x / alpha, alpha / (alpha - x));
            build(
                Vec2::new(alpha, 0.0),
                tilde * Mat2::upper_unipotent(y),
                GroupElement::new(Mat2::upper_unipotent(y), Vec2::new(x, 0.0)),
            )
        }
        BorelCase::Sloped(c) => {
            let (alpha, beta) = (c * n, n);
            let a = beta / (beta - y);
            build(Vec2::new(alpha, beta), upper(a, ((1.0 - a) * alpha - x) / beta), pure)
        }
    }
}

/// `(I, (0, n)) · (u(−t/n), 0) · (I, (0, n))⁻¹ = (u(−t/n), (t, 0))`.
pub fn unipotent_witness(t: f64, n: f64) -> Witness {
    Witness::new(
        GroupElement::from_translation(Vec2::new(0.0, n)),
        GroupElement::from_matrix(Mat2::upper_unipotent(-t / n)),
        GroupElement::from_translation(Vec2::new(t, 0.0)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{distance_to, Family, Slope, SubgroupDescriptor};

    fn assert_rate(errs: (f64, f64), what: &str) {
        assert!(errs.0 <= 0.1 && errs.1 <= 0.02, "{what}: {errs:?}");
        assert!(errs.1 < errs.0 || errs.1 < 1e-12, "{what}: {errs:?}");
    }

    #[test]
    fn levi_examples() {
        let w = levi_approximator(&GroupElement::from_translation(Vec2::new(1.0, 0.0)), 10.0).unwrap();
        assert!((w.matrix - Mat2::diag(0.9, 10.0 / 9.0)).frobenius() < 1e-15);
        assert!((w.translation - Vec2::new(1.0, 0.0)).norm() < 1e-14);
        let target = GroupElement::from_translation(Vec2::new(1.0, 0.0));
        assert!((dist(&w, &target) - 0.1494).abs() < 1e-4);

        let target = GroupElement::from_translation(Vec2::new(0.0, 1.0));
        let w = levi_approximator(&target, 100.0).unwrap();
        assert!((w.matrix - Mat2::lower_unipotent(-0.01)).frobenius() < 1e-15);
        assert!((dist(&w, &target) - 0.01).abs() < 1e-12);

        let w = levi_approximator(&GroupElement::IDENTITY, 50.0).unwrap();
        assert!(dist(&w, &GroupElement::IDENTITY) < 1e-15);

        assert!(levi_approximator(&GroupElement::from_translation(Vec2::new(3.0, 0.0)), 3.0).is_err());
    }

    #[test]
    fn levi_lies_in_conjugated_levi() {
        let target = GroupElement::new(Mat2::upper_unipotent(0.7), Vec2::new(-1.0, 2.0));
        for alpha in [10.0, 100.0, 1000.0] {
            let w = levi_approximator(&target, alpha).unwrap();
            let fam = SubgroupDescriptor::with_conjugator(
                Family::Levi,
                GroupElement::from_translation(Vec2::new(alpha, 0.0)),
            );
            assert!(distance_to(&fam, &w) < 1e-8);
            assert!(dist(&w, &target) < 10.0 / alpha);
        }
    }

    #[test]
    fn compact_cases_converge() {
        for case in [
            CompactCase::Vertical,
            CompactCase::Horizontal,
            CompactCase::Sloped(2.0),
            CompactCase::Unipotent,
            CompactCase::MinusIdentity,
        ] {
            for t in [-2.0, -0.5, 1.0, 2.0] {
                let e = (compact_witness(case, t, 1e3).error(), compact_witness(case, t, 1e4).error());
                assert!(e.0 <= 0.1 && e.1 <= 0.02, "{case:?} {t}: {e:?}");
            }
        }
    }

    #[test]
    fn diagonal_cases_converge() {
        for case in [
            DiagonalCase::HeisenbergSlow { r: 0.5, d: 1.0 },
            DiagonalCase::HeisenbergFast { a: 1.0, p: 2.0, d: -1.0 },
            DiagonalCase::Horizontal,
            DiagonalCase::Vertical,
            DiagonalCase::Sloped(2.0),
        ] {
            for t in [-1.0, 0.5, 1.0] {
                let e = (diagonal_witness(case, t, 1e3).error(), diagonal_witness(case, t, 1e4).error());
                assert_rate(e, &format!("{case:?} {t}"));
            }
        }
    }

    #[test]
    fn borel_cases_converge() {
        for case in [BorelCase::Vertical, BorelCase::Horizontal, BorelCase::Sloped(2.0)] {
            for (x, y) in [(1.0, -1.0), (0.5, 2.0), (-2.0, 0.3)] {
                let e = (borel_witness(case, x, y, 1e3).error(), borel_witness(case, x, y, 1e4).error());
                assert_rate(e, &format!("{case:?} {x} {y}"));
            }
        }
    }

    #[test]
    fn unipotent_witness_rate() {
        for t in [-2.0, -1.0, 1.0, 2.0] {
            let w = unipotent_witness(t, 1e4);
            assert!(w.error() <= 0.02);
            assert!((w.error() - t.abs() / 1e4).abs() < 1e-12);
        }
    }

    #[test]
    fn witnesses_land_in_their_conjugated_subgroup() {
        let w = compact_witness(CompactCase::Sloped(2.0), 1.0, 100.0);
        let fam = SubgroupDescriptor::with_conjugator(Family::MaximalCompact, w.conjugator);
        assert!(distance_to(&fam, &w.element) < 1e-8);
        let w = diagonal_witness(DiagonalCase::Sloped(2.0), 1.0, 100.0);
        let fam = SubgroupDescriptor::with_conjugator(Family::Diagonal, w.conjugator);
        assert!(distance_to(&fam, &w.element) < 1e-8);
        // The sloped diagonal limit lies on the line of slope −c.
        let line = SubgroupDescriptor::new(Family::LineV(Slope::Finite(-2.0)));
        assert!(distance_to(&line, &w.target) < 1e-12);
    }
}
