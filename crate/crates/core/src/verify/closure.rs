use super::{CaseResult, Profile, Status, Theorem};
use crate::catalog::SubgroupDescriptor;
use crate::error::Result;
use crate::experiment::analyze;
use crate::schema::{ConjugatorSchema, Growth};
use crate::window::Window;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

/// Largest tolerated share of runs without a definitive limit.
pub const MAX_INCONCLUSIVE_RATE: f64 = 0.2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosureSummary {
    pub runs: usize,
    pub definitive: usize,
    pub inconclusive: usize,
    pub inconclusive_rate: f64,
    /// Fitted family tag → count over definitive runs.
    pub families: BTreeMap<String, usize>,
    pub outside_catalog: Vec<String>,
    pub unipotent_violations: Vec<String>,
    /// Schema and reason for each run without a definitive limit.
    pub inconclusive_runs: Vec<String>,
}

impl ClosureSummary {
    pub(super) fn verdict(&self) -> CaseResult {
        let ok = self.outside_catalog.is_empty()
            && self.unipotent_violations.is_empty()
            && self.inconclusive_rate <= MAX_INCONCLUSIVE_RATE;
        CaseResult {
            id: "closure:random".into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: format!(
                "{} runs, {} definitive {:?}, inconclusive rate {:.2}, {} outside catalog, {} unipotent violations",
                self.runs,
                self.definitive,
                self.families,
                self.inconclusive_rate,
                self.outside_catalog.len(),
                self.unipotent_violations.len()
            ),
            limit: None,
            trace_csv: None,
        }
    }
}

/// Bounded, logarithmic or power growth with a random nonzero coefficient.
fn growth(rng: &mut ChaCha8Rng, powers: &[f64], max_coef: f64) -> (Growth, String) {
    let coef = rng.gen_range(0.25..=max_coef) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    match rng.gen_range(0..3) {
        0 => (Growth::constant(coef), format!("{coef:.3}")),
        1 => (Growth::log(coef), format!("{coef:.3} ln n")),
        _ => {
            let p = *powers.choose(rng).expect("powers are nonempty");
            (Growth::power(coef, p), format!("{coef:.3} n^{p}"))
        }
    }
}

/// A conjugating sequence `(u(s_n) a(l_n) k(θ), v_n)` with each coordinate drawn
/// from {bounded, log n, n^p}.
pub fn random_schema(rng: &mut ChaCha8Rng, label: &str) -> ConjugatorSchema {
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    // e^{l_n} grows at most like n, so the matrix part stays representable.
    let (log_a, la) = growth(rng, &[0.25, 0.5], 1.0);
    let (s, ss) = growth(rng, &[0.5, 1.0], 2.0);
    let (vx, sx) = growth(rng, &[0.5, 1.0, 1.5, 2.0], 2.0);
    let (vy, sy) = growth(rng, &[0.5, 1.0, 1.5, 2.0], 2.0);
    let log_a = match log_a.0.first() {
        Some(t) if t.pow > 0.0 => Growth::log(t.coef.clamp(-1.0, 1.0)),
        _ => log_a,
    };
    ConjugatorSchema::iwasawa(
        Growth::constant(theta),
        log_a,
        s,
        [vx, vy],
        format!("{label}: theta {theta:.3}, log a ~ {la}, s ~ {ss}, v ~ ({sx}, {sy})"),
    )
}

pub(super) fn run(t: Theorem, profile: Profile, seed: u64, w: &Window, tol: f64) -> Result<ClosureSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from_str_radix(&t.id().replace('.', ""), 16).unwrap_or(0));
    let schemas: Vec<ConjugatorSchema> =
        (0..profile.closure_runs()).map(|i| random_schema(&mut rng, &format!("random {}", i + 1))).collect();
    let base = SubgroupDescriptor::new(t.base());
    let indices = profile.closure_indices();
    let reports = schemas
        .par_iter()
        .map(|s| analyze(&base, s, w, &indices, tol))
        .collect::<Result<Vec<_>>>()?;
    let mut summary = ClosureSummary {
        runs: reports.len(),
        definitive: 0,
        inconclusive: 0,
        inconclusive_rate: 0.0,
        families: BTreeMap::new(),
        outside_catalog: Vec::new(),
        unipotent_violations: Vec::new(),
        inconclusive_runs: Vec::new(),
    };
    for (r, s) in reports.iter().zip(&schemas) {
        if !r.unipotent_consistent {
            summary.unipotent_violations.push(s.description.clone());
        }
        match r.family_tag() {
            Some(tag) => {
                summary.definitive += 1;
                *summary.families.entry(tag.to_string()).or_default() += 1;
                if !t.in_catalog(&r.classification.descriptor, w) {
                    summary.outside_catalog.push(format!("{} -> {}", s.description, r.classification.descriptor));
                }
            }
            None => {
                summary.inconclusive += 1;
                let c = &r.classification;
                let why = if !c.definitive {
                    format!("best fit {} residual {:.3e}", c.descriptor, c.residual)
                } else if !r.settled {
                    format!("fit {} not settled, trace {:?}", c.descriptor, r.trace.distances)
                } else {
                    format!("fit {} trace {}", c.descriptor, r.trace.verdict.as_str())
                };
                summary.inconclusive_runs.push(format!("{}: {why}", s.description));
            }
        }
    }
    summary.inconclusive_rate = summary.inconclusive as f64 / summary.runs.max(1) as f64;
    Ok(summary)
}
