//! Per-theorem experiment batteries: witness soundness, named limit cases and a
//! randomized check that every definitive limit lies in the theorem's catalog.

mod cases;
mod closure;

use crate::catalog::{Family, SubgroupDescriptor};
use crate::error::{Error, Result};
use crate::group::Vec2;
use crate::metric::sig9;
use crate::window::Window;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

pub use closure::{random_schema, ClosureSummary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Theorem {
    #[serde(rename = "1.1")]
    Levi,
    #[serde(rename = "1.2")]
    Compact,
    #[serde(rename = "1.3")]
    Diagonal,
    #[serde(rename = "1.4")]
    Borel,
    #[serde(rename = "1.5")]
    Unipotent,
}

impl Theorem {
    pub const ALL: [Theorem; 5] =
        [Theorem::Levi, Theorem::Compact, Theorem::Diagonal, Theorem::Borel, Theorem::Unipotent];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::Levi => "1.1",
            Theorem::Compact => "1.2",
            Theorem::Diagonal => "1.3",
            Theorem::Borel => "1.4",
            Theorem::Unipotent => "1.5",
        }
    }

    /// The subgroup whose conjugates are studied.
    pub fn base(self) -> Family {
        match self {
            Theorem::Levi => Family::Levi,
            Theorem::Compact => Family::MaximalCompact,
            Theorem::Diagonal => Family::Diagonal,
            Theorem::Borel => Family::Borel,
            Theorem::Unipotent => Family::UnipotentUpper,
        }
    }

    /// Whether a fitted limit belongs to the theorem's list of possible limits,
    /// up to conjugacy. `N⁺` appears under its own tag and as `V_{(1,0,c)}`.
    /// A conjugate of `Ñ⁺` whose `−I` sheet lies outside the window is seen as
    /// a conjugate of `N⁺`, so that fit is accepted for the compact case.
    pub fn in_catalog(self, d: &SubgroupDescriptor, w: &Window) -> bool {
        use Family::*;
        match (self, d.family) {
            (Theorem::Levi, Levi | NPlusSemidirectR2) => true,
            (Theorem::Compact, UnipotentUpper) => minus_sheet_norm(d) > w.radius,
            (Theorem::Compact, MaximalCompact | LineV(_) | TildeNPlus) => true,
            (Theorem::Diagonal, Diagonal | LineV(_) | UnipotentUpper | UnipotentC(_)) => true,
            (Theorem::Diagonal, HeisenbergLine { a, b, .. }) => {
                let m = a.abs().max(b.abs());
                (m - 1.0).abs() <= 1e-9
            }
            (Theorem::Borel, Borel | NPlusTimesXAxis | R2Full) => true,
            (Theorem::Unipotent, UnipotentUpper | UnipotentC(_) | LineV(_)) => true,
            (Theorem::Unipotent, HeisenbergLine { b, .. }) => b.abs() <= 1e-9,
            _ => false,
        }
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s.trim())
            .ok_or_else(|| Error::InvalidConfig { field: "theorem".into(), message: format!("unknown theorem id {s:?}") })
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    #[default]
    Quick,
    Full,
}

impl Profile {
    /// Indices of the named-case traces.
    pub fn indices(self) -> Vec<u64> {
        match self {
            Profile::Quick => vec![10, 31, 100, 316, 1000],
            Profile::Full => vec![10, 31, 100, 316, 1000, 3162, 10000],
        }
    }

    /// Indices of each randomized closure trace.
    pub fn closure_indices(self) -> Vec<u64> {
        match self {
            Profile::Quick => vec![1000, 3162, 10000],
            Profile::Full => vec![1000, 3162, 10000, 31623],
        }
    }

    pub fn closure_runs(self) -> usize {
        50
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(Error::InvalidConfig { field: "profile".into(), message: format!("expected quick or full, got {s:?}") }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<serde_json::Value>,
    /// Per-`n` trace, written next to the report.
    #[serde(skip)]
    pub trace_csv: Option<String>,
}

/// Largest witness error over a target grid, per `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessSeries {
    pub id: String,
    pub targets: usize,
    pub points: Vec<(u64, f64)>,
}

impl WitnessSeries {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,dist_to_target\n");
        for (n, d) in &self.points {
            out.push_str(&format!("{n},{}\n", sig9(*d)));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub profile: Profile,
    pub seed: u64,
    pub window: Window,
    pub tol: f64,
    pub cases: Vec<CaseResult>,
    pub witnesses: Vec<WitnessSeries>,
    pub closure: ClosureSummary,
}

impl TheoremReport {
    pub fn failing(&self) -> Vec<&str> {
        self.ids_with(Status::Fail)
    }

    pub fn inconclusive(&self) -> Vec<&str> {
        self.ids_with(Status::Inconclusive)
    }

    fn ids_with(&self, s: Status) -> Vec<&str> {
        self.cases.iter().filter(|c| c.status == s).map(|c| c.id.as_str()).collect()
    }

    /// 0 when everything passed, 1 on any failure, otherwise 2.
    pub fn exit_code(&self) -> i32 {
        if !self.failing().is_empty() {
            1
        } else if !self.inconclusive().is_empty() {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report is serializable")
    }
}

/// Smallest norm of `(−I, 2v)` over conjugators `(g, v)` giving the same
/// conjugate of `N⁺`; only the part of `v` across the fixed line `g e₁` matters.
fn minus_sheet_norm(d: &SubgroupDescriptor) -> f64 {
    let h = d.conjugator;
    let e = h.matrix * Vec2::new(1.0, 0.0);
    let across = (e.x * h.translation.y - e.y * h.translation.x).abs() / e.norm();
    2.0 * std::f64::consts::SQRT_2 + 2.0 * across
}

/// Direction of the translations of a (conjugated) line family.
pub fn line_direction(d: &SubgroupDescriptor) -> Option<Vec2> {
    match d.family {
        Family::LineV(s) => {
            let u = d.conjugator.matrix * s.direction();
            Some(u * (1.0 / u.norm()))
        }
        _ => None,
    }
}

/// Slope `y/x` of a line family, infinite for vertical lines.
pub fn line_slope(d: &SubgroupDescriptor) -> Option<f64> {
    line_direction(d).map(|u| if u.x == 0.0 { f64::INFINITY } else { u.y / u.x })
}

pub fn verify_theorem(t: Theorem, profile: Profile, seed: u64, w: &Window, tol: f64) -> Result<TheoremReport> {
    w.validate()?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidConfig { field: "tol".into(), message: "must be positive".into() });
    }
    let witnesses = cases::witness_battery(t);
    let mut results: Vec<CaseResult> = witnesses.iter().map(cases::witness_verdict).collect();
    results.extend(cases::named_cases(t, profile, w, tol)?);
    let closure = closure::run(t, profile, seed, w, tol)?;
    results.push(closure.verdict());
    Ok(TheoremReport { theorem: t, profile, seed, window: *w, tol, cases: results, witnesses, closure })
}
