//! Limit experiments: conjugate a base subgroup along a schema, classify the
//! far end of the sequence, and trace the distance to the fitted family.

use crate::catalog::{conjugate_descriptor, descriptor_to_json, SubgroupDescriptor};
use crate::classify::{classify_subgroup, Classification, CONJUGATOR_BOUND};
use crate::error::Result;
use crate::metric::{run_sequence, validate_indices, ConvergenceReport, Verdict};
use crate::schema::ConjugatorSchema;
use crate::window::Window;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitReport {
    pub classification: Classification,
    pub trace: ConvergenceReport,
    /// Largest conjugator translation over the indices.
    pub max_translation: f64,
    /// Conjugator translations beyond [`CONJUGATOR_BOUND`] while the matrix parts
    /// stay bounded; the limit's matrix parts must then be unipotent.
    pub unipotent_forced: bool,
    pub unipotent_consistent: bool,
    /// The fit is taken at the last index, so the trace always ends near zero.
    /// The sequence counts as settled only if the previous index is already
    /// within `tol · n_last / n_prev` of the fit.
    pub settled: bool,
}

impl LimitReport {
    /// Definitive family, or `None` when unresolved or not convergent.
    pub fn family_tag(&self) -> Option<&'static str> {
        (self.classification.definitive && self.settled && self.trace.verdict == Verdict::Converged)
            .then(|| self.classification.descriptor.family.tag())
    }

    pub fn is_inconclusive(&self) -> bool {
        self.family_tag().is_none()
    }

    pub fn to_json(&self, base: &SubgroupDescriptor) -> serde_json::Value {
        let c = &self.classification;
        let fitted = descriptor_to_json(&c.descriptor);
        serde_json::json!({
            "family": fitted["family"],
            "params": fitted["params"],
            "conjugator": fitted["conjugator"],
            "residual": c.residual,
            "definitive": c.definitive,
            "flags": c.flags,
            "dimension_estimate": c.dimension_estimate,
            "ties": c.ties,
            "unipotent_check": {
                "max_translation": self.max_translation,
                "unipotent_forced": self.unipotent_forced,
                "consistent": self.unipotent_consistent,
            },
            "settled": self.settled,
            "trace_ref": "trace.csv",
            "trace": self.trace.to_json(base, &c.descriptor),
        })
    }
}

pub fn analyze(
    base: &SubgroupDescriptor,
    schema: &ConjugatorSchema,
    w: &Window,
    indices: &[u64],
    tol: f64,
) -> Result<LimitReport> {
    validate_indices(indices)?;
    w.validate()?;
    schema.validate()?;
    let conjugators = indices.iter().map(|&n| schema.at(n)).collect::<Result<Vec<_>>>()?;
    let last = conjugators.last().expect("indices are nonempty");
    let classification = classify_subgroup(&conjugate_descriptor(last, base), w, tol);
    let trace = run_sequence(base, schema, &classification.descriptor, w, indices, tol)?;
    let max_translation = conjugators.iter().map(|h| h.translation.norm()).fold(0.0, f64::max);
    let bounded_matrix = conjugators.iter().all(|h| h.matrix.frobenius() <= CONJUGATOR_BOUND);
    let unipotent_forced = max_translation > CONJUGATOR_BOUND && bounded_matrix;
    let unipotent_consistent = !unipotent_forced
        || !classification.definitive
        || classification.flags.all_matrix_parts_unipotent;
    let settled = match (indices, trace.distances.as_slice()) {
        ([.., prev, last], [.., d_prev, _]) => *d_prev <= tol * (*last as f64 / *prev as f64),
        _ => true,
    };
    Ok(LimitReport { classification, trace, max_translation, unipotent_forced, unipotent_consistent, settled })
}
