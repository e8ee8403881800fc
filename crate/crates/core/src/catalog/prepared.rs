//! Window-aware numerics for one descriptor: sampling and point-to-family distance.
//!
//! Conjugated families can be extremely anisotropic in their own coordinates (a
//! compact subgroup conjugated by a large unipotent moves by `s²·θ`). Every chart is
//! therefore whitened at its anchor: the Jacobian `J` of the coordinate map is
//! factored as `UΣVᵀ` and the chart is reparametrized by `q = ΣVᵀp`, in which the
//! group distance grows at unit rate in every direction near the anchor.

use super::{Chart, SubgroupDescriptor};
use crate::group::{conj, dist, inv, norm, GroupElement};
use crate::minimize::{golden_section, NelderMead};
use crate::window::Window;
use nalgebra::DMatrix;
use rayon::prelude::*;

/// Grid evaluations allowed when sampling one chart.
const SAMPLE_EVAL_CAP: usize = 400_000;
/// Seeds kept per chart for minimization in dimension ≥ 2.
const SEED_CAP: usize = 6_000;
/// Grid points scanned per chart for one-dimensional minimization.
const SCAN_POINTS: usize = 2001;
const MAX_BISECT_DEPTH: usize = 40;
/// Minimizers may leave a bounded chart by this much, so that points on the seam
/// between two angle charts lie inside one of them.
const CHART_OVERLAP: f64 = 0.6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceResult {
    pub value: f64,
    /// False when the minimizer hit its iteration limit or the scan boundary.
    pub certified: bool,
}

#[derive(Clone, Debug)]
struct Frame {
    chart: Chart,
    /// `p = base + W q`, row-major `k × k`.
    w: Vec<f64>,
    k: usize,
}

impl Frame {
    fn coords(&self, q: &[f64]) -> Vec<f64> {
        let k = self.k;
        (0..k)
            .map(|i| self.chart.base[i] + (0..k).map(|j| self.w[i * k + j] * q[j]).sum::<f64>())
            .collect()
    }

    fn in_chart(&self, p: &[f64]) -> bool {
        self.chart
            .bounds
            .iter()
            .zip(p.iter().zip(&self.chart.base))
            .all(|(b, (x, c))| b.is_none_or(|b| (x - c).abs() <= b + 1e-12))
    }

    /// Coordinates clamped into the widened chart, for unconstrained minimizers.
    fn clamped(&self, mut p: Vec<f64>) -> Vec<f64> {
        for (j, b) in self.chart.bounds.iter().enumerate() {
            if let Some(b) = b {
                let c = self.chart.base[j];
                let b = b + CHART_OVERLAP;
                p[j] = p[j].clamp(c - b, c + b);
            }
        }
        p
    }

    fn point(&self, d: &SubgroupDescriptor, q: &[f64]) -> Option<GroupElement> {
        let p = self.coords(q);
        if !self.in_chart(&p) {
            return None;
        }
        let x = d.element(&p, self.chart.sheet);
        x.is_finite().then_some(x)
    }

    fn point_clamped(&self, d: &SubgroupDescriptor, q: &[f64]) -> GroupElement {
        d.element(&self.clamped(self.coords(q)), self.chart.sheet)
    }
}

#[derive(Clone, Debug)]
struct Seed {
    frame: usize,
    q: Vec<f64>,
    element: GroupElement,
    /// Rough bound on how far the element moves within the seed's grid cell.
    reach: f64,
}

/// Scan grid of a one-dimensional chart.
#[derive(Clone, Debug)]
struct Scan {
    frame: usize,
    qs: Vec<f64>,
    points: Vec<Option<GroupElement>>,
    step: f64,
}

/// A descriptor prepared for one window: samples plus minimization seeds.
#[derive(Clone, Debug)]
pub struct Prepared {
    descriptor: SubgroupDescriptor,
    /// `descriptor` with the rotation part of its conjugator pulled out; all
    /// numerics run on `inner` and are carried over by conjugating with `rot`.
    inner: SubgroupDescriptor,
    rot: GroupElement,
    window: Window,
    frames: Vec<Frame>,
    samples: Vec<GroupElement>,
    resolution: f64,
    scans: Vec<Scan>,
    seeds: Vec<Seed>,
    seed_step: f64,
    reach: f64,
    numeric_only: bool,
    closed: bool,
}

impl Prepared {
    pub fn new(d: &SubgroupDescriptor, w: &Window) -> Self {
        Self::build(d, w, false)
    }

    /// Like [`Prepared::new`] but never uses closed-form distances.
    pub fn numeric(d: &SubgroupDescriptor, w: &Window) -> Self {
        Self::build(d, w, true)
    }

    fn build(outer: &SubgroupDescriptor, w: &Window, numeric_only: bool) -> Self {
        let (k, rest) = outer.split_conjugator();
        let inner = SubgroupDescriptor::with_conjugator(outer.family, rest);
        let rot = GroupElement::from_matrix(k);
        let d = &inner;
        let frames: Vec<Frame> = d.family.charts().into_iter().map(|c| whiten(d, c)).collect();
        let k = d.dimension();
        let resolution = w.effective_mesh(k);
        let mut samples = Vec::new();
        for f in &frames {
            samples.extend(sample_frame(d, f, w, resolution).iter().map(|x| conj(&rot, x)));
        }
        let reach = 2.0 * w.radius + 0.5;
        let mut p = Prepared {
            descriptor: *outer,
            inner,
            rot,
            window: *w,
            frames,
            samples,
            resolution,
            scans: Vec::new(),
            seeds: Vec::new(),
            seed_step: 0.0,
            reach,
            numeric_only,
            closed: false,
        };
        let needs_numeric = numeric_only
            || d.family.closed_form_distance(&GroupElement::IDENTITY).is_none()
            || dist(&rest, &GroupElement::IDENTITY) > 1e-14;
        p.closed = !needs_numeric;
        if needs_numeric {
            if k == 1 {
                p.build_scans();
            } else {
                p.build_seeds();
            }
        }
        p
    }

    pub fn descriptor(&self) -> &SubgroupDescriptor {
        &self.descriptor
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn samples(&self) -> &[GroupElement] {
        &self.samples
    }

    /// True when distances are evaluated in closed form.
    pub fn is_closed_form(&self) -> bool {
        self.closed
    }

    /// Cover fineness of [`Prepared::samples`].
    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    fn build_scans(&mut self) {
        let d = self.inner;
        for (fi, f) in self.frames.iter().enumerate() {
            let extent = extent(&d, f, self.reach);
            let n = SCAN_POINTS.max((2.0 * extent / (self.window.mesh / 4.0)).min(200_000.0) as usize) | 1;
            let step = 2.0 * extent / (n - 1) as f64;
            let qs: Vec<f64> = (0..n).map(|i| -extent + i as f64 * step).collect();
            let points = qs.iter().map(|&q| f.point(&d, &[q])).collect();
            self.scans.push(Scan { frame: fi, qs, points, step });
        }
    }

    fn build_seeds(&mut self) {
        let d = self.inner;
        let k = d.dimension();
        let mut step_max: f64 = 0.0;
        for (fi, f) in self.frames.iter().enumerate() {
            let extent = extent(&d, f, self.reach);
            let per_axis = (SEED_CAP as f64).powf(1.0 / k as f64).floor().max(3.0) as usize;
            let step = 2.0 * extent / (per_axis - 1) as f64;
            step_max = step_max.max(step);
            let n = per_axis.pow(k as u32);
            let found: Vec<Seed> = (0..n)
                .into_par_iter()
                .filter_map(|idx| {
                    let q = grid_point(idx, per_axis, k, -extent, step);
                    let el = f.point(&d, &q)?;
                    if norm(&el) > self.reach + step * k as f64 {
                        return None;
                    }
                    let reach = cell_reach(&d, f, &q, &el, step);
                    Some(Seed { frame: fi, q, element: el, reach })
                })
                .collect();
            self.seeds.extend(found);
        }
        self.seed_step = step_max;
    }

    /// `inf_p dist(p, x)` over the family.
    pub fn distance(&self, x: &GroupElement) -> DistanceResult {
        if !self.numeric_only {
            if let Some(v) = super::closed_form(&self.descriptor, x) {
                return DistanceResult { value: v, certified: true };
            }
        }
        let pulled = conj(&inv(&self.rot), x);
        let mut r = if self.inner.dimension() == 1 {
            self.distance_1d(&pulled)
        } else {
            self.distance_nd(&pulled)
        };
        // Beyond the seeded region the nearest point may have been missed.
        if norm(x) > self.window.radius * (1.0 + 1e-9) + 1e-12 && 2.0 * norm(x) > self.reach {
            r.certified = false;
        }
        r
    }

    fn distance_1d(&self, x: &GroupElement) -> DistanceResult {
        let d = self.inner;
        let mut best = f64::INFINITY;
        let mut certified = true;
        for scan in &self.scans {
            let f = &self.frames[scan.frame];
            let vals: Vec<f64> = scan
                .points
                .iter()
                .map(|p| p.map_or(f64::INFINITY, |p| dist(&p, x)))
                .collect();
            let n = vals.len();
            // Local minima of the scan, best first.
            let mut minima: Vec<usize> = (0..n)
                .filter(|&i| {
                    vals[i].is_finite()
                        && (i == 0 || vals[i] <= vals[i - 1])
                        && (i + 1 == n || vals[i] <= vals[i + 1])
                })
                .collect();
            minima.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
            let Some(&first) = minima.first() else { continue };
            for &i in minima.iter().take(3) {
                if vals[i] > vals[first] + 4.0 * scan.step {
                    break;
                }
                let obj = |q: f64| dist(&f.point_clamped(&d, &[q]), x);
                let lo = scan.qs[i] - scan.step;
                let hi = scan.qs[i] + scan.step;
                let (_, v) = golden_section(obj, lo, hi, 1e-12 * (1.0 + hi.abs()));
                let v = v.min(vals[i]);
                if v < best {
                    best = v;
                    // A minimum on the scan edge may continue outside it, unless
                    // the edge is a chart boundary covered by another chart.
                    let at_edge = i == 0 || i + 1 == n;
                    let edge_is_bound = f.chart.bounds[0].is_some();
                    certified = !at_edge || edge_is_bound;
                }
            }
        }
        DistanceResult { value: best, certified }
    }

    fn distance_nd(&self, x: &GroupElement) -> DistanceResult {
        let d = self.inner;
        // Starts go nearest first. A minimizer's nearest seed is within its cell
        // reach, so seeds whose lower bound is already above the best value are
        // skipped.
        let mut ranked: Vec<(f64, usize)> =
            self.seeds.iter().enumerate().map(|(i, s)| (dist(&s.element, x), i)).collect();
        let head = ranked.len().min(256);
        let by_value = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
        if head < ranked.len() {
            ranked.select_nth_unstable_by(head, by_value);
        }
        ranked[..head].sort_by(by_value);
        let nm = NelderMead { ftol: 1e-10, xtol: 1e-7, ..NelderMead::default() };
        let mut best = f64::INFINITY;
        let mut certified = false;
        // Up to four starts, kept apart so they explore distinct basins.
        let mut starts: Vec<usize> = Vec::new();
        for pos in 0..ranked.len() {
            if starts.len() == 4 {
                break;
            }
            if pos == head {
                ranked[head..].sort_by(by_value);
            }
            let (d_seed, i) = ranked[pos];
            if d_seed - self.seeds[i].reach >= best {
                continue;
            }
            let s = &self.seeds[i];
            let close = starts.iter().any(|&j| {
                let t = &self.seeds[j];
                t.frame == s.frame
                    && t.q.iter().zip(&s.q).all(|(a, b)| (a - b).abs() <= 2.0 * self.seed_step)
            });
            if close {
                continue;
            }
            starts.push(i);
            let f = &self.frames[s.frame];
            let obj = |q: &[f64]| dist(&f.point_clamped(&d, q), x);
            let m = nm.minimize(obj, &s.q, self.seed_step / 2.0);
            if m.value < best - 1e-12 {
                best = m.value;
                certified = m.converged;
            } else if (m.value - best).abs() <= 1e-12 {
                certified |= m.converged;
            }
        }
        DistanceResult { value: best, certified }
    }
}

/// Sum over axes of the larger element displacement at half a grid step, padded.
fn cell_reach(d: &SubgroupDescriptor, f: &Frame, q: &[f64], el: &GroupElement, step: f64) -> f64 {
    let mut r = 0.0;
    for a in 0..q.len() {
        let mut m: f64 = 0.0;
        for sign in [-0.5, 0.5] {
            let mut p = q.to_vec();
            p[a] += sign * step;
            m = m.max(dist(&f.point_clamped(d, &p), el));
        }
        r += m;
    }
    1.5 * r
}

/// Central-difference Jacobian of `p ↦ element(base + p)` at `p = 0`, flattened to
/// the six coordinates of the group element.
fn jacobian(d: &SubgroupDescriptor, chart: &Chart, h: &[f64]) -> DMatrix<f64> {
    let k = chart.base.len();
    let mut j = DMatrix::zeros(6, k);
    for c in 0..k {
        let mut plus = chart.base.clone();
        let mut minus = chart.base.clone();
        plus[c] += h[c];
        minus[c] -= h[c];
        let a = d.element(&plus, chart.sheet).to_array();
        let b = d.element(&minus, chart.sheet).to_array();
        for r in 0..6 {
            j[(r, c)] = (a[r] - b[r]) / (2.0 * h[c]);
        }
    }
    j
}

fn whiten(d: &SubgroupDescriptor, chart: Chart) -> Frame {
    let k = chart.base.len();
    let mut h = vec![1e-6; k];
    let mut jac = jacobian(d, &chart, &h);
    // Second pass with steps scaled so each column moves the element by ~1e-5.
    for (c, step) in h.iter_mut().enumerate() {
        let n = jac.column(c).norm();
        if n.is_finite() && n > 0.0 {
            *step = (1e-5 / n).clamp(1e-13, 1e-3);
        }
    }
    jac = jacobian(d, &chart, &h);
    let svd = jac.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let sv = svd.singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max).max(1e-300);
    // W = V Σ⁻¹
    let mut w = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..k {
            let s = sv[j].max(1e-12 * smax);
            w[i * k + j] = v_t[(j, i)] / s;
        }
    }
    Frame { chart, w, k }
}

fn grid_point(mut idx: usize, per_axis: usize, k: usize, start: f64, step: f64) -> Vec<f64> {
    let mut q = vec![0.0; k];
    for c in q.iter_mut() {
        *c = start + (idx % per_axis) as f64 * step;
        idx /= per_axis;
    }
    q
}

/// Half-width of a `q`-box containing every chart point within `rho` of the
/// identity, found by doubling until a coarse outer shell has no such point.
fn extent(d: &SubgroupDescriptor, f: &Frame, rho: f64) -> f64 {
    let k = f.k;
    let per_axis: usize = match k {
        1 => 129,
        2 => 33,
        3 => 13,
        _ => 9,
    };
    let cap = if k == 1 { 1e4 * rho } else { 16.0 * rho };
    let mut b = 1.5 * rho;
    loop {
        let step = 2.0 * b / (per_axis - 1) as f64;
        let n = per_axis.pow(k as u32);
        let shell_hit = (0..n).into_par_iter().any(|idx| {
            let q = grid_point(idx, per_axis, k, -b, step);
            let outer = q.iter().any(|c| c.abs() >= 0.7 * b);
            outer && f.point(d, &q).is_some_and(|x| norm(&x) <= rho)
        });
        if !shell_hit || b >= cap {
            return b.min(cap);
        }
        b *= 2.0;
    }
}

fn sample_frame(d: &SubgroupDescriptor, f: &Frame, w: &Window, resolution: f64) -> Vec<GroupElement> {
    let k = f.k;
    let r = w.radius;
    let b = extent(d, f, r);
    let inside = |x: &GroupElement| norm(x) <= r * (1.0 + 1e-12);
    if k == 1 {
        let step = w.mesh;
        let n = (b / step).ceil() as i64;
        let qs: Vec<f64> = (-n..=n).map(|i| i as f64 * step).collect();
        let pts: Vec<Option<GroupElement>> = qs.par_iter().map(|&q| f.point(d, &[q])).collect();
        let mut out = Vec::new();
        for i in 0..qs.len() {
            if let Some(x) = pts[i] {
                if inside(&x) {
                    out.push(x);
                }
            }
            if i + 1 < qs.len() {
                if let (Some(a), Some(c)) = (pts[i], pts[i + 1]) {
                    if inside(&a) || inside(&c) {
                        bisect(d, f, (qs[i], a), (qs[i + 1], c), w.mesh, r, 0, &mut out);
                    }
                }
            }
        }
        return out;
    }
    let mut step = 2.0 * resolution / (k as f64).sqrt();
    let mut per_axis = (2.0 * b / step).floor() as usize + 1;
    while per_axis.pow(k as u32) > SAMPLE_EVAL_CAP {
        per_axis -= 1;
    }
    if per_axis.is_multiple_of(2) {
        per_axis += 1;
    }
    step = step.max(2.0 * b / (per_axis - 1).max(1) as f64);
    let start = -step * ((per_axis - 1) / 2) as f64;
    (0..per_axis.pow(k as u32))
        .into_par_iter()
        .filter_map(|idx| {
            let q = grid_point(idx, per_axis, k, start, step);
            f.point(d, &q).filter(inside)
        })
        .collect()
}

/// Adds in-window midpoints until consecutive points are within `mesh`.
#[allow(clippy::too_many_arguments)]
fn bisect(
    d: &SubgroupDescriptor,
    f: &Frame,
    a: (f64, GroupElement),
    c: (f64, GroupElement),
    mesh: f64,
    r: f64,
    depth: usize,
    out: &mut Vec<GroupElement>,
) {
    let gap = dist(&a.1, &c.1);
    if gap <= mesh * (1.0 + 1e-9) || depth >= MAX_BISECT_DEPTH {
        return;
    }
    if norm(&a.1).min(norm(&c.1)) > r + gap {
        return;
    }
    let qm = 0.5 * (a.0 + c.0);
    let Some(m) = f.point(d, &[qm]) else { return };
    bisect(d, f, a, (qm, m), mesh, r, depth + 1, out);
    if norm(&m) <= r * (1.0 + 1e-12) {
        out.push(m);
    }
    bisect(d, f, (qm, m), c, mesh, r, depth + 1, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Family;
    use crate::group::Vec2;

    #[test]
    fn samples_are_at_distance_zero() {
        let w = Window::default();
        for v in [(2.0, 0.0), (4.74, 0.0), (4.62, -1.07), (0.3, 0.3), (-8.0, 5.0)] {
            let h = GroupElement::from_translation(Vec2::new(v.0, v.1));
            let p = Prepared::new(&SubgroupDescriptor::with_conjugator(Family::Levi, h), &w);
            let worst = p.samples().iter().step_by(7).map(|x| p.distance(x).value).fold(0.0, f64::max);
            assert!(worst < 1e-6, "v = {v:?}: {worst}");
        }
    }
}
