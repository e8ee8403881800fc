//! Identification of a sampled subgroup with a catalog family.
//!
//! The cloud's tangent space at the identity is read off from logarithms of the
//! points near it. For every family of the matching dimension a conjugator is
//! solved for in closed form from that tangent space, and the candidate is scored
//! by the symmetric windowed Hausdorff distance to the cloud.

use crate::catalog::{descriptor_to_json, Family, Prepared, Slope, SubgroupDescriptor};
use crate::group::{dist, inv, is_unipotent, mul, norm, GroupElement, Mat2, Vec2};
use crate::lie::{log, LieAlgebraElement};
use crate::minimize::golden_section;
use crate::window::Window;
use nalgebra::{DMatrix, Matrix2, Matrix4, Vector2, Vector4};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Conjugators beyond this size (matrix Frobenius norm or translation length)
/// are not accepted as fits: a family conjugated that far has left any bounded
/// window and the cloud is better described by its limit.
pub const CONJUGATOR_BOUND: f64 = 100.0;
/// Points used for the forward half of a fit residual.
const FORWARD_POINTS: usize = 400;
/// Candidate samples used for the backward half.
const BACKWARD_POINTS: usize = 1500;
const COMMUTATOR_POINTS: usize = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralFlags {
    pub contains_full_r2: bool,
    pub all_matrix_parts_unipotent: bool,
    pub component_count: u8,
    pub abelian: bool,
}

/// Structural features of a point cloud drawn from a subgroup.
pub fn structural_probe(points: &[GroupElement], tol: f64) -> StructuralFlags {
    let radius = points.iter().map(norm).fold(0.0, f64::max);
    let translations: Vec<Vec2> = points
        .iter()
        .filter(|p| (p.matrix - Mat2::IDENTITY).frobenius() <= tol)
        .map(|p| p.translation)
        .collect();
    // Pure translations fill the plane when their cloud is wide in every direction.
    let contains_full_r2 = !translations.is_empty()
        && (0..36).all(|i| {
            let a = i as f64 * std::f64::consts::PI / 36.0;
            let d = Vec2::new(a.cos(), a.sin());
            let (lo, hi) = translations
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| {
                    let x = t.dot(d);
                    (lo.min(x), hi.max(x))
                });
            hi - lo >= radius / 2.0
        });
    let all_matrix_parts_unipotent = points
        .iter()
        .all(|p| is_unipotent(&p.matrix, tol) || is_unipotent(&-p.matrix, tol));
    let negative = points.iter().any(|p| is_unipotent(&-p.matrix, tol));
    let sub = stride(points, COMMUTATOR_POINTS);
    let abelian = sub.par_iter().all(|x| {
        sub.iter().all(|y| {
            let c = mul(&mul(x, y), &inv(&mul(y, x)));
            dist(&c, &GroupElement::IDENTITY) <= tol
        })
    });
    StructuralFlags {
        contains_full_r2,
        all_matrix_parts_unipotent,
        component_count: if negative { 2 } else { 1 },
        abelian,
    }
}

fn stride<T: Clone>(v: &[T], max: usize) -> Vec<T> {
    if v.len() <= max {
        return v.to_vec();
    }
    let step = v.len() as f64 / max as f64;
    (0..max).map(|i| v[(i as f64 * step) as usize].clone()).collect()
}

/// Tangent space at the identity: the span of logarithms of points within
/// `cut` of the identity, as orthonormal rows of length 6.
#[derive(Clone, Debug)]
pub struct TangentEstimate {
    pub dimension: usize,
    pub basis: Vec<LieAlgebraElement>,
    pub singular_values: Vec<f64>,
}

pub fn tangent_space(points: &[GroupElement], cut: f64) -> TangentEstimate {
    let logs: Vec<[f64; 6]> = points
        .iter()
        .filter(|p| norm(p) <= cut && p.matrix.trace() > 0.0)
        .filter_map(log)
        .map(|x| x.to_array())
        .collect();
    if logs.is_empty() {
        return TangentEstimate { dimension: 0, basis: Vec::new(), singular_values: Vec::new() };
    }
    let flat: Vec<f64> = logs.iter().flatten().copied().collect();
    let m = DMatrix::from_row_slice(logs.len(), 6, &flat);
    let svd = m.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let top = sv.first().copied().unwrap_or(0.0);
    let dimension = sv.iter().filter(|&&s| s > 1e-5 * top && s > 1e-12).count();
    let basis = order
        .iter()
        .take(dimension)
        .map(|&i| {
            let row: Vec<f64> = (0..6).map(|j| v_t[(i, j)]).collect();
            LieAlgebraElement::from_array(&row)
        })
        .collect();
    TangentEstimate { dimension, basis, singular_values: sv }
}

/// Outcome of scoring one candidate descriptor against a cloud.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateFit {
    #[serde(serialize_with = "ser_descriptor")]
    pub descriptor: SubgroupDescriptor,
    pub forward: f64,
    pub backward: f64,
    pub residual: f64,
    pub certified: bool,
    pub admissible: bool,
}

fn ser_descriptor<S: serde::Serializer>(d: &SubgroupDescriptor, s: S) -> Result<S::Ok, S::Error> {
    descriptor_to_json(d).serialize(s)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    /// Best fit; meaningful as a limit only when `definitive`.
    #[serde(serialize_with = "ser_descriptor")]
    pub descriptor: SubgroupDescriptor,
    pub residual: f64,
    pub definitive: bool,
    pub flags: StructuralFlags,
    pub dimension_estimate: usize,
    /// Other candidates that also fit within tolerance.
    pub ties: Vec<CandidateFit>,
    pub candidates: Vec<CandidateFit>,
}

impl Classification {
    pub fn tag(&self) -> Option<&'static str> {
        self.definitive.then(|| self.descriptor.family.tag())
    }
}

/// Fits ranked among families of one dimension, most specific first.
fn priority(f: &Family) -> usize {
    crate::catalog::FAMILY_TAGS.iter().position(|t| *t == f.tag()).unwrap_or(usize::MAX)
}

fn admissible(h: &GroupElement) -> bool {
    h.matrix.frobenius() <= CONJUGATOR_BOUND && h.translation.norm() <= CONJUGATOR_BOUND && h.is_finite()
}

/// Classifies a cloud of points from a subgroup inside the window. Candidate
/// samples are compared against the cloud by nearest neighbours, so the cloud's
/// own cover fineness is discounted from the backward distance.
pub fn classify_limit(points: &[GroupElement], w: &Window, tol: f64) -> Classification {
    classify_impl(points, None, w, tol)
}

/// Classifies a known subgroup (typically a conjugate `g_n H g_n⁻¹`), scoring the
/// backward direction by exact distances to it.
pub fn classify_subgroup(d: &SubgroupDescriptor, w: &Window, tol: f64) -> Classification {
    let prep = Prepared::new(d, w);
    classify_impl(prep.samples(), Some(&prep), w, tol)
}

fn classify_impl(points: &[GroupElement], oracle: Option<&Prepared>, w: &Window, tol: f64) -> Classification {
    let flags = structural_probe(points, tol);
    let tangent = tangent_space(points, (w.radius / 2.0).min(1.5));
    let k = tangent.dimension;
    let seeds = candidate_seeds(points, &tangent, &flags);
    let cloud_resolution = if oracle.is_some() { 0.0 } else { w.effective_mesh(k) };
    let mut candidates: Vec<CandidateFit> = seeds
        .iter()
        .map(|d| score(points, oracle, d, w, cloud_resolution))
        .collect();
    candidates.sort_by(|a, b| {
        let fa = &a.descriptor.family;
        let fb = &b.descriptor.family;
        (fa.dimension(), priority(fa), fa.tag())
            .cmp(&(fb.dimension(), priority(fb), fb.tag()))
            .then(a.residual.total_cmp(&b.residual))
    });
    let fits: Vec<&CandidateFit> = candidates
        .iter()
        .filter(|c| c.admissible && c.certified && c.residual <= tol)
        .collect();
    let (descriptor, residual, definitive, ties) = match fits.first() {
        Some(best) => {
            let ties = fits[1..]
                .iter()
                .filter(|c| c.descriptor.family.tag() != best.descriptor.family.tag())
                .map(|c| (*c).clone())
                .collect();
            (best.descriptor, best.residual, true, ties)
        }
        None => {
            let best = candidates
                .iter()
                .filter(|c| c.admissible)
                .min_by(|a, b| a.residual.total_cmp(&b.residual));
            match best {
                Some(b) => (b.descriptor, b.residual, false, Vec::new()),
                None => (SubgroupDescriptor::new(Family::R2Full), f64::INFINITY, false, Vec::new()),
            }
        }
    };
    Classification { descriptor, residual, definitive, flags, dimension_estimate: k, ties, candidates }
}

/// Symmetric residual of a candidate against the cloud.
pub fn score(
    points: &[GroupElement],
    oracle: Option<&Prepared>,
    d: &SubgroupDescriptor,
    w: &Window,
    cloud_resolution: f64,
) -> CandidateFit {
    let prep = Prepared::new(d, w);
    let fwd_pts = stride(points, FORWARD_POINTS);
    let (forward, c1) = fwd_pts
        .par_iter()
        .map(|p| {
            let r = prep.distance(p);
            (r.value, r.certified)
        })
        .reduce(|| (0.0, true), |a, b| (a.0.max(b.0), a.1 && b.1));
    let back_pts = stride(prep.samples(), BACKWARD_POINTS);
    let (backward, c2) = match oracle {
        Some(o) => back_pts
            .par_iter()
            .map(|p| {
                let r = o.distance(p);
                (r.value, r.certified)
            })
            .reduce(|| (0.0, true), |a, b| (a.0.max(b.0), a.1 && b.1)),
        None => {
            let b = back_pts
                .par_iter()
                .map(|c| points.iter().map(|p| dist(c, p)).fold(f64::INFINITY, f64::min))
                .reduce(|| 0.0, f64::max);
            ((b - cloud_resolution).max(0.0), true)
        }
    };
    CandidateFit {
        descriptor: *d,
        forward,
        backward,
        residual: forward.max(backward),
        certified: c1 && c2,
        admissible: admissible(&d.conjugator),
    }
}

/// Candidate descriptors with conjugators solved from the tangent space.
fn candidate_seeds(
    points: &[GroupElement],
    tangent: &TangentEstimate,
    flags: &StructuralFlags,
) -> Vec<SubgroupDescriptor> {
    let mut out = Vec::new();
    let basis = &tangent.basis;
    let full = flags.contains_full_r2;
    let two = flags.component_count == 2;
    let keep = |f: &Family| {
        f.contains_full_r2() == full && (!two || f.has_negative_sheet()) && (two || f.is_connected())
    };
    let mut push = |d: Option<SubgroupDescriptor>| {
        if let Some(d) = d {
            if keep(&d.family) && d.conjugator.is_finite() {
                out.push(d);
            }
        }
    };
    match tangent.dimension {
        1 => {
            let x = basis[0];
            push(fit_line(&x));
            push(fit_unipotent(&x, Family::UnipotentUpper));
            push(fit_unipotent(&x, Family::TildeNPlus));
            push(fit_compact(&x));
            push(fit_diagonal(&x));
            push(fit_heisenberg(&x));
        }
        2 => {
            push(Some(SubgroupDescriptor::new(Family::R2Full)));
            push(fit_by_direction(basis, 1, Family::NPlusTimesXAxis));
            push(fit_borel(basis));
        }
        3 => {
            push(fit_by_direction(basis, 1, Family::NPlusSemidirectR2));
            push(fit_levi(points));
        }
        4 => push(fit_by_direction(basis, 2, Family::BorelFull)),
        _ => {}
    }
    out
}

fn with(family: Family, conjugator: GroupElement) -> SubgroupDescriptor {
    SubgroupDescriptor::with_conjugator(family, conjugator)
}

fn fit_line(x: &LieAlgebraElement) -> Option<SubgroupDescriptor> {
    let w = x.w;
    if w.norm() < 1e-12 {
        return None;
    }
    let slope = if w.y.abs() > 100.0 * w.x.abs() { Slope::Infinite } else { Slope::Finite(w.y / w.x) };
    Some(SubgroupDescriptor::new(Family::LineV(slope)))
}

/// Direction of the image of a nilpotent matrix.
fn image_angle(m: &Mat2) -> f64 {
    let c0 = m.col(0);
    let c1 = m.col(1);
    let d = if c1.norm() >= c0.norm() { c1 } else { c0 };
    d.y.atan2(d.x)
}

/// Least-squares `v` with `M_i v = −w_i` for every tangent element.
fn solve_translation(xs: &[LieAlgebraElement]) -> Option<Vec2> {
    let mut ata = Matrix2::zeros();
    let mut atb = Vector2::zeros();
    for x in xs {
        let a = Matrix2::new(x.m.a11, x.m.a12, x.m.a21, x.m.a22);
        let b = Vector2::new(-x.w.x, -x.w.y);
        ata += a.transpose() * a;
        atb += a.transpose() * b;
    }
    let v = ata.try_inverse()? * atb;
    Some(Vec2::new(v[0], v[1]))
}

fn fit_unipotent(x: &LieAlgebraElement, family: Family) -> Option<SubgroupDescriptor> {
    if x.m.frobenius() < 1e-9 {
        return None;
    }
    let k = Mat2::rotation(image_angle(&x.m));
    // M has rank one; solve in the least-squares sense, minimal-norm.
    let m = x.m;
    let mtm = m.transpose() * m;
    let reg = 1e-12 * mtm.frobenius();
    let a = Matrix2::new(mtm.a11 + reg, mtm.a12, mtm.a21, mtm.a22 + reg);
    let rhs = m.transpose() * (-x.w);
    let v = a.try_inverse()? * Vector2::new(rhs.x, rhs.y);
    Some(with(family, GroupElement::new(k, Vec2::new(v[0], v[1]))))
}

fn fit_heisenberg(x: &LieAlgebraElement) -> Option<SubgroupDescriptor> {
    if x.m.frobenius() < 1e-9 {
        return None;
    }
    let k = Mat2::rotation(image_angle(&x.m));
    let mr = k.transpose() * x.m * k;
    let wr = k.transpose() * x.w;
    let (a, b, c) = normalize_heisenberg(mr.a12, wr.y, wr.x)?;
    Family::heisenberg(a, b, c)
        .ok()
        .map(|f| with(f, GroupElement::from_matrix(k)))
}

/// Scales `(a, b, c)` so that `max(|a|, |b|) = 1` with the first nonzero of
/// `(a, b)` positive.
pub fn normalize_heisenberg(a: f64, b: f64, c: f64) -> Option<(f64, f64, f64)> {
    let mu = a.abs().max(b.abs());
    if mu < 1e-12 || !mu.is_finite() {
        return None;
    }
    let lead = if a.abs() > 1e-9 * mu { a } else { b };
    let s = lead.signum() / mu;
    let clean = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
    Some((clean(a * s), clean(b * s), clean(c * s)))
}

fn fit_compact(x: &LieAlgebraElement) -> Option<SubgroupDescriptor> {
    let m = x.m;
    if m.det() <= 1e-12 * m.frobenius().powi(2) {
        return None;
    }
    let mut q = Mat2::new(-m.a21, m.a11, m.a11, m.a12);
    if q.a11 < 0.0 {
        q = -q;
    }
    let q = q.scale(1.0 / q.det().sqrt());
    // Square root of a symmetric positive matrix with unit determinant.
    let root = (q + Mat2::IDENTITY).scale(1.0 / (q.trace() + 2.0).sqrt());
    let g = root.inverse()?;
    let v = m.inverse()? * (-x.w);
    Some(with(Family::MaximalCompact, GroupElement::new(g.renormalized(), v)))
}

fn fit_diagonal(x: &LieAlgebraElement) -> Option<SubgroupDescriptor> {
    let m = x.m;
    let det = m.det();
    if det >= -1e-12 * m.frobenius().powi(2) {
        return None;
    }
    let mu = (-det).sqrt();
    let eig = |lambda: f64| {
        let a = Vec2::new(m.a12, lambda - m.a11);
        let b = Vec2::new(lambda - m.a22, m.a21);
        let v = if a.norm() >= b.norm() { a } else { b };
        v * (1.0 / v.norm())
    };
    let e_plus = eig(mu);
    let mut e_minus = eig(-mu);
    let mut g = Mat2::from_cols(e_plus, e_minus);
    if g.det() < 0.0 {
        e_minus = -e_minus;
        g = Mat2::from_cols(e_plus, e_minus);
    }
    let g = g.scale(1.0 / g.det().sqrt());
    let v = m.inverse()? * (-x.w);
    Some(with(Family::Diagonal, GroupElement::new(g, v)))
}

/// Orthonormal basis of the span of the matrix parts, strongest first. Read from
/// the eigenvectors of the 4×4 Gram matrix: a thin SVD of the wide `k × 4`
/// matrix loses accuracy in its right singular vectors.
fn matrix_span(xs: &[LieAlgebraElement], r: usize) -> Vec<Mat2> {
    let mut gram = Matrix4::zeros();
    for x in xs {
        let v = Vector4::new(x.m.a11, x.m.a12, x.m.a21, x.m.a22);
        gram += v * v.transpose();
    }
    let eig = gram.symmetric_eigen();
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    order
        .iter()
        .take(r)
        .filter(|&&i| eig.eigenvalues[i] > 1e-18)
        .map(|&i| {
            let c = eig.eigenvectors.column(i);
            Mat2::new(c[0], c[1], c[2], c[3])
        })
        .collect()
}

/// Angle of the line preserved by every matrix in `ms`.
fn common_eigen_angle(ms: &[Mat2]) -> f64 {
    let cost = |phi: f64| {
        let d = Vec2::new(phi.cos(), phi.sin());
        ms.iter().map(|m| (*m * d).cross(d).powi(2)).sum::<f64>()
    };
    let n = 720;
    let step = std::f64::consts::PI / n as f64;
    let best = (0..n)
        .map(|i| i as f64 * step)
        .min_by(|a, b| cost(*a).total_cmp(&cost(*b)))
        .unwrap_or(0.0);
    golden_section(cost, best - step, best + step, 1e-13).0
}

/// Families normalized by upper triangular `(b, w)`: only the rotation part of
/// the conjugator matters and is read from the common eigen-line.
fn fit_by_direction(xs: &[LieAlgebraElement], r: usize, family: Family) -> Option<SubgroupDescriptor> {
    let ms = matrix_span(xs, r);
    if ms.len() < r {
        return None;
    }
    let phi = if r == 1 { image_angle(&ms[0]) } else { common_eigen_angle(&ms) };
    Some(with(family, GroupElement::from_matrix(Mat2::rotation(phi))))
}

fn fit_borel(xs: &[LieAlgebraElement]) -> Option<SubgroupDescriptor> {
    let ms = matrix_span(xs, 2);
    if ms.len() < 2 {
        return None;
    }
    let k = Mat2::rotation(common_eigen_angle(&ms));
    let v = solve_translation(xs)?;
    Some(with(Family::Borel, GroupElement::new(k, v)))
}

/// Conjugates of `SL(2,R)` are `(I, v) L (I, v)⁻¹`, whose points satisfy
/// `u = (I − m) v`.
fn fit_levi(points: &[GroupElement]) -> Option<SubgroupDescriptor> {
    let mut ata = Matrix2::zeros();
    let mut atb = Vector2::zeros();
    for p in stride(points, 2000) {
        let a = Mat2::IDENTITY - p.matrix;
        let a = Matrix2::new(a.a11, a.a12, a.a21, a.a22);
        ata += a.transpose() * a;
        atb += a.transpose() * Vector2::new(p.translation.x, p.translation.y);
    }
    let v = ata.try_inverse()? * atb;
    Some(with(Family::Levi, GroupElement::from_translation(Vec2::new(v[0], v[1]))))
}

/// `true` iff every definitive report has the base dimension.
pub fn dimension_check(reports: &[Classification], base_dim: usize) -> bool {
    reports
        .iter()
        .filter(|r| r.definitive)
        .all(|r| r.descriptor.dimension() == base_dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{conjugate_descriptor, sample};

    fn d(f: Family) -> SubgroupDescriptor {
        SubgroupDescriptor::new(f)
    }

    #[test]
    fn probe_examples() {
        let w = Window::default();
        let f = structural_probe(&sample(&d(Family::NPlusSemidirectR2), &w), 1e-6);
        assert_eq!(
            f,
            StructuralFlags {
                contains_full_r2: true,
                all_matrix_parts_unipotent: true,
                component_count: 1,
                abelian: false
            }
        );
        let f = structural_probe(&sample(&d(Family::TildeNPlus), &w), 1e-6);
        assert_eq!(f.component_count, 2);
        assert!(f.abelian && f.all_matrix_parts_unipotent);
        let f = structural_probe(&sample(&d(Family::LineV(Slope::Finite(1.5))), &w), 1e-6);
        assert!(!f.contains_full_r2 && f.all_matrix_parts_unipotent && f.abelian);
        assert_eq!(f.component_count, 1);
    }

    #[test]
    fn tangent_dimension_matches_table() {
        let w = Window::default();
        let h = GroupElement::new(Mat2::new(1.0, 0.5, 0.2, 1.1), Vec2::new(0.3, -0.4));
        for f in [
            Family::Levi,
            Family::MaximalCompact,
            Family::Diagonal,
            Family::Borel,
            Family::BorelFull,
            Family::HeisenbergLine { a: 1.0, b: 0.5, c: 0.0 },
            Family::NPlusSemidirectR2,
            Family::R2Full,
            Family::NPlusTimesXAxis,
        ] {
            let desc = SubgroupDescriptor::with_conjugator(f, GroupElement::new(h.matrix.renormalized(), h.translation));
            let t = tangent_space(&sample(&desc, &w), 1.5);
            assert_eq!(t.dimension, f.dimension(), "{f:?} {:?}", t.singular_values);
        }
    }

    #[test]
    fn heisenberg_normalization() {
        assert_eq!(normalize_heisenberg(-2.0, 1.0, 4.0), Some((1.0, -0.5, -2.0)));
        assert_eq!(normalize_heisenberg(0.0, -3.0, 3.0), Some((0.0, 1.0, -1.0)));
        assert_eq!(normalize_heisenberg(0.0, 0.0, 1.0), None);
    }

    #[test]
    fn classifies_a_sampled_line() {
        let w = Window::default();
        let c = classify_limit(&sample(&d(Family::LineV(Slope::Finite(0.0))), &w), &w, 0.05);
        assert!(c.definitive, "{c:?}");
        match c.descriptor.family {
            Family::LineV(Slope::Finite(s)) => assert!(s.abs() <= 0.01),
            other => panic!("{other:?}"),
        }
        assert!(c.residual <= w.mesh);
    }

    #[test]
    fn recovers_conjugated_families() {
        let w = Window::default();
        let h = GroupElement::new(Mat2::new(1.2, 0.4, -0.3, 0.7333333333333334).renormalized(), Vec2::new(0.5, -0.25));
        for f in [
            Family::MaximalCompact,
            Family::Diagonal,
            Family::UnipotentUpper,
            Family::TildeNPlus,
            Family::HeisenbergLine { a: 1.0, b: 0.5, c: 0.25 },
            Family::Borel,
            Family::NPlusTimesXAxis,
            Family::R2Full,
            Family::NPlusSemidirectR2,
            Family::Levi,
        ] {
            // The −I sheet of Ñ⁺ moves to (−I, 2v); keep it inside the window.
            let h = if f == Family::TildeNPlus { GroupElement::from_matrix(h.matrix) } else { h };
            let desc = conjugate_descriptor(&h, &d(f));
            let c = classify_subgroup(&desc, &w, 0.05);
            assert!(c.definitive, "{f:?}: {:#?}", c.candidates);
            assert_eq!(c.descriptor.family.tag(), f.tag(), "{f:?} -> {}", c.descriptor);
        }
    }

    #[test]
    fn dimension_check_examples() {
        let w = Window::default();
        let good = classify_subgroup(&d(Family::Diagonal), &w, 0.05);
        assert!(dimension_check(std::slice::from_ref(&good), 1));
        let mut bad = good.clone();
        bad.descriptor = d(Family::R2Full);
        assert!(!dimension_check(&[good, bad], 1));
    }
}
