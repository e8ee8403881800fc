//! Windowed Hausdorff comparison of subgroups and convergence experiments.

use crate::catalog::{conjugate_descriptor, descriptor_to_json, Prepared, SubgroupDescriptor};
use crate::error::{Error, Result};
use crate::group::{dist, GroupElement};
use crate::schema::ConjugatorSchema;
use crate::window::Window;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HausdorffEstimate {
    /// Sup over samples of the first subgroup of the distance to the second.
    pub forward: f64,
    pub backward: f64,
    pub value: f64,
    /// Samples drawn from the first and second subgroup.
    pub samples_used: (usize, usize),
    /// Coarsest sample cover fineness of the two subgroups.
    pub resolution: f64,
    /// False if any inner minimization was not certified.
    pub certified: bool,
}

/// `max_p distance_to(target, p)`, or 0 for no points.
pub fn directed_hausdorff(points: &[GroupElement], target: &SubgroupDescriptor) -> f64 {
    let reach = points.iter().map(crate::group::norm).fold(0.0, f64::max).max(1.0);
    let w = Window { radius: reach, mesh: reach / 4.0 };
    directed_prepared(points, &Prepared::new(target, &w)).0
}

/// Target samples used for the nearest-sample upper bounds.
const BOUND_SAMPLES: usize = 6000;
/// Exact distances are evaluated in batches of this size, largest bound first.
const BATCH: usize = 64;

/// Directed distance against a prepared target; the flag reports certification.
///
/// The nearest target sample bounds each exact distance from above, so only
/// points whose bound exceeds the running maximum are minimized.
pub fn directed_prepared(points: &[GroupElement], target: &Prepared) -> (f64, bool) {
    if target.is_closed_form() {
        let v = points.par_iter().map(|p| target.distance(p).value).reduce(|| 0.0, f64::max);
        return (v, true);
    }
    let ts = target.samples();
    let step = ts.len().div_ceil(BOUND_SAMPLES).max(1);
    let mut bounded: Vec<(f64, usize)> = points
        .par_iter()
        .enumerate()
        .map(|(i, p)| (ts.iter().step_by(step).map(|t| dist(t, p)).fold(f64::INFINITY, f64::min), i))
        .collect();
    bounded.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut best = 0.0f64;
    let mut certified = true;
    for batch in bounded.chunks(BATCH) {
        if batch[0].0 <= best {
            break;
        }
        let (v, c) = batch
            .par_iter()
            .filter(|(ub, _)| *ub > best)
            .map(|&(ub, i)| {
                let r = target.distance(&points[i]);
                (r.value.min(ub), r.certified)
            })
            .reduce(|| (0.0, true), |a, b| (a.0.max(b.0), a.1 && b.1));
        best = best.max(v);
        certified &= c;
    }
    (best, certified)
}

pub fn chabauty_distance(h1: &SubgroupDescriptor, h2: &SubgroupDescriptor, w: &Window) -> HausdorffEstimate {
    let (p1, p2) = rayon::join(|| Prepared::new(h1, w), || Prepared::new(h2, w));
    chabauty_prepared(&p1, &p2)
}

pub fn chabauty_prepared(p1: &Prepared, p2: &Prepared) -> HausdorffEstimate {
    let ((forward, c1), (backward, c2)) = rayon::join(
        || directed_prepared(p1.samples(), p2),
        || directed_prepared(p2.samples(), p1),
    );
    HausdorffEstimate {
        forward,
        backward,
        value: forward.max(backward),
        samples_used: (p1.samples().len(), p2.samples().len()),
        resolution: p1.resolution().max(p2.resolution()),
        certified: c1 && c2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Converged,
    Diverged,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Converged => "converged",
            Verdict::Diverged => "diverged",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub indices: Vec<u64>,
    pub distances: Vec<f64>,
    pub forward: Vec<f64>,
    pub backward: Vec<f64>,
    pub certified: Vec<bool>,
    pub verdict: Verdict,
    pub final_distance: f64,
    pub window: Window,
    pub tol: f64,
    pub schema: String,
}

/// Converged: final value within `tol` and each of the last three values at most
/// 10% (plus a hundredth of `tol`) above its predecessor. Any uncertified step, or
/// a small but growing tail, is inconclusive.
pub fn verdict(distances: &[f64], certified: &[bool], tol: f64) -> Verdict {
    let Some(&last) = distances.last() else {
        return Verdict::Inconclusive;
    };
    if certified.iter().any(|c| !c) || !last.is_finite() {
        return Verdict::Inconclusive;
    }
    if last > tol {
        return Verdict::Diverged;
    }
    let tail = &distances[distances.len().saturating_sub(3)..];
    let steady = tail.windows(2).all(|p| p[1] <= 1.1 * p[0] + 0.01 * tol);
    if steady {
        Verdict::Converged
    } else {
        Verdict::Inconclusive
    }
}

pub fn validate_indices(indices: &[u64]) -> Result<()> {
    if indices.is_empty() || indices[0] == 0 || indices.windows(2).any(|p| p[1] <= p[0]) {
        return Err(Error::Indices);
    }
    Ok(())
}

/// Per-`n` distance from `h_n = schema(n) · base · schema(n)⁻¹` to the candidate.
pub fn run_sequence(
    base: &SubgroupDescriptor,
    schema: &ConjugatorSchema,
    candidate: &SubgroupDescriptor,
    w: &Window,
    indices: &[u64],
    tol: f64,
) -> Result<ConvergenceReport> {
    validate_indices(indices)?;
    w.validate()?;
    let conjugators = indices.iter().map(|&n| schema.at(n)).collect::<Result<Vec<_>>>()?;
    let target = Prepared::new(candidate, w);
    let estimates: Vec<HausdorffEstimate> = conjugators
        .par_iter()
        .map(|h| {
            let hn = conjugate_descriptor(h, base);
            chabauty_prepared(&Prepared::new(&hn, w), &target)
        })
        .collect();
    Ok(assemble(indices, &estimates, w, tol, &schema.description))
}

pub fn assemble(
    indices: &[u64],
    estimates: &[HausdorffEstimate],
    w: &Window,
    tol: f64,
    description: &str,
) -> ConvergenceReport {
    let distances: Vec<f64> = estimates.iter().map(|e| e.value).collect();
    let certified: Vec<bool> = estimates.iter().map(|e| e.certified).collect();
    ConvergenceReport {
        indices: indices.to_vec(),
        verdict: verdict(&distances, &certified, tol),
        final_distance: distances.last().copied().unwrap_or(f64::NAN),
        forward: estimates.iter().map(|e| e.forward).collect(),
        backward: estimates.iter().map(|e| e.backward).collect(),
        distances,
        certified,
        window: *w,
        tol,
        schema: description.to_string(),
    }
}

impl ConvergenceReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,forward,backward,value\n");
        for i in 0..self.indices.len() {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                self.indices[i],
                sig9(self.forward[i]),
                sig9(self.backward[i]),
                sig9(self.distances[i])
            );
        }
        out
    }

    pub fn to_json(&self, base: &SubgroupDescriptor, candidate: &SubgroupDescriptor) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report is serializable");
        v["base"] = descriptor_to_json(base);
        v["candidate"] = descriptor_to_json(candidate);
        v
    }
}

/// Plain decimal with 9 significant digits.
pub fn sig9(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-30..=15).contains(&mag) {
        return format!("{x:.8e}");
    }
    let decimals = (8 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding may carry into a new digit (9.9999999995 → 10.00000000).
    let trimmed = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if trimmed == "-0" {
        "0".into()
    } else {
        trimmed
    }
}
