use super::{line_slope, CaseResult, Profile, Status, Theorem, WitnessSeries};
use crate::catalog::{Family, SubgroupDescriptor};
use crate::classify::{dimension_check, Classification};
use crate::error::Result;
use crate::experiment::{analyze, LimitReport};
use crate::group::{GroupElement, Mat2, Vec2};
use crate::metric::run_sequence;
use crate::schema::{ConjugatorSchema, Growth};
use crate::window::Window;
use crate::witness::{
    borel_witness, compact_witness, diagonal_witness, levi_approximator, unipotent_witness, BorelCase, CompactCase,
    DiagonalCase, Witness,
};

const WITNESS_N: [u64; 4] = [10, 100, 1_000, 10_000];
const GRID: usize = 20;

/// `GRID` evenly spaced values in `[−r, r]`.
fn grid(r: f64) -> Vec<f64> {
    (0..GRID).map(|i| -r + 2.0 * r * i as f64 / (GRID - 1) as f64).collect()
}

fn series(id: &str, targets: usize, err_at: impl Fn(f64) -> f64) -> WitnessSeries {
    let points = WITNESS_N.iter().map(|&n| (n, err_at(n as f64))).collect();
    WitnessSeries { id: id.to_string(), targets, points }
}

/// Max witness error over a family of targets, per `n`.
fn max_over<'a, T: Copy>(targets: &'a [T], w: impl Fn(T, f64) -> Witness + 'a) -> impl Fn(f64) -> f64 + 'a {
    move |n| targets.iter().map(|&t| w(t, n).error()).fold(0.0, f64::max)
}

pub(super) fn witness_battery(t: Theorem) -> Vec<WitnessSeries> {
    let ts = grid(1.2);
    match t {
        Theorem::Levi => {
            // (u(r), (s, t)) on a 20-point grid with every coordinate in [−1, 1].
            let targets: Vec<GroupElement> = (0..GRID)
                .map(|i| {
                    let c = |k: usize| -1.0 + 2.0 * ((i * k) % 7) as f64 / 6.0;
                    GroupElement::new(Mat2::upper_unipotent(c(1)), Vec2::new(c(3), c(5)))
                })
                .collect();
            let err = |n: f64| {
                targets
                    .iter()
                    .map(|x| levi_approximator(x, n).map_or(f64::INFINITY, |g| crate::group::dist(&g, x)))
                    .fold(0.0, f64::max)
            };
            vec![series("witness:levi_approximator", GRID, err)]
        }
        Theorem::Compact => [
            ("witness:compact_vertical", CompactCase::Vertical),
            ("witness:compact_horizontal", CompactCase::Horizontal),
            ("witness:compact_sloped", CompactCase::Sloped(2.0)),
            ("witness:compact_unipotent", CompactCase::Unipotent),
            ("witness:compact_minus_identity", CompactCase::MinusIdentity),
        ]
        .into_iter()
        .map(|(id, case)| series(id, GRID, max_over(&ts, move |t, n| compact_witness(case, t, n))))
        .collect(),
        Theorem::Diagonal => [
            ("witness:diagonal_heisenberg_slow", DiagonalCase::HeisenbergSlow { r: 0.5, d: 1.0 }),
            ("witness:diagonal_heisenberg_fast", DiagonalCase::HeisenbergFast { a: 1.0, p: 0.5, d: 1.0 }),
            ("witness:diagonal_horizontal", DiagonalCase::Horizontal),
            ("witness:diagonal_vertical", DiagonalCase::Vertical),
            ("witness:diagonal_sloped", DiagonalCase::Sloped(2.0)),
        ]
        .into_iter()
        .map(|(id, case)| series(id, GRID, max_over(&ts, move |t, n| diagonal_witness(case, t, n))))
        .collect(),
        Theorem::Borel => {
            let xy: Vec<(f64, f64)> =
                (0..GRID).map(|i| (-1.2 + 0.6 * (i % 5) as f64, -1.2 + 0.8 * (i / 5) as f64)).collect();
            [
                ("witness:borel_vertical", BorelCase::Vertical),
                ("witness:borel_horizontal", BorelCase::Horizontal),
                ("witness:borel_sloped", BorelCase::Sloped(2.0)),
            ]
            .into_iter()
            .map(|(id, case)| series(id, GRID, max_over(&xy, move |(x, y), n| borel_witness(case, x, y, n))))
            .collect()
        }
        Theorem::Unipotent => {
            let mut ts: Vec<f64> = vec![-2.0, -1.0, 1.0, 2.0];
            ts.extend((0..GRID - 4).map(|i| -2.5 + 5.0 * i as f64 / (GRID - 5) as f64));
            vec![series("witness:unipotent", ts.len(), max_over(&ts, unipotent_witness))]
        }
    }
}

/// Errors at `n = 10³` and `n = 10⁴` within 0.1 and 0.02.
pub(super) fn witness_verdict(s: &WitnessSeries) -> CaseResult {
    let at = |n: u64| s.points.iter().find(|p| p.0 == n).map_or(f64::INFINITY, |p| p.1);
    let (e3, e4) = (at(1_000), at(10_000));
    let ok = e3 <= 0.1 && e4 <= 0.02;
    CaseResult {
        id: s.id.clone(),
        status: if ok { Status::Pass } else { Status::Fail },
        detail: format!("max error {e3:.3e} at n=1e3, {e4:.3e} at n=1e4 over {} targets", s.targets),
        limit: None,
        trace_csv: None,
    }
}

type Check = Box<dyn Fn(&LimitReport) -> std::result::Result<String, String>>;

struct Named {
    id: &'static str,
    base: Family,
    schema: ConjugatorSchema,
    check: Check,
}

fn n_pow(c: f64, p: f64) -> Growth {
    Growth::power(c, p)
}

fn along(x: f64, y: f64, what: &str) -> ConjugatorSchema {
    ConjugatorSchema::translation(Vec2::new(x, y), n_pow(1.0, 1.0), what)
}

fn family_is(tag: &'static str) -> Check {
    Box::new(move |r| {
        let got = r.classification.descriptor.family.tag();
        if got == tag {
            Ok(format!("{} (residual {:.3e})", r.classification.descriptor, r.classification.residual))
        } else {
            Err(format!("expected {tag}, fitted {}", r.classification.descriptor))
        }
    })
}

fn one_of(tags: &'static [&'static str]) -> Check {
    Box::new(move |r| {
        let got = r.classification.descriptor.family.tag();
        if tags.contains(&got) {
            Ok(format!("{} (residual {:.3e})", r.classification.descriptor, r.classification.residual))
        } else {
            Err(format!("fitted {} outside {tags:?}", r.classification.descriptor))
        }
    })
}

/// A line of translations whose slope passes `ok`.
fn line_where(what: &'static str, ok: impl Fn(f64) -> bool + 'static) -> Check {
    Box::new(move |r| {
        let d = &r.classification.descriptor;
        match line_slope(d) {
            Some(c) if ok(c) => Ok(format!("LineV with slope {c:.6} (residual {:.3e})", r.classification.residual)),
            Some(c) => Err(format!("LineV slope {c:.6} is not {what}")),
            None => Err(format!("expected LineV ({what}), fitted {d}")),
        }
    })
}

fn named(t: Theorem) -> Vec<Named> {
    let z = Growth::zero;
    let case = |id, base, schema, check| Named { id, base, schema, check };
    match t {
        Theorem::Levi => {
            // v_n = n A e1 + A e2 with A the rotation by φ; the direction is A e1.
            let (c, s) = (0.6, 0.8);
            vec![
                case(
                    "named:translation_x",
                    Family::Levi,
                    along(1.0, 0.0, "(I, (n, 0))"),
                    family_is("NPlusSemidirectR2"),
                ),
                case(
                    "named:rotated",
                    Family::Levi,
                    ConjugatorSchema::translation_xy(
                        n_pow(c, 1.0).plus(Growth::constant(-s)),
                        n_pow(s, 1.0).plus(Growth::constant(c)),
                        "(I, n (0.6, 0.8) + (-0.8, 0.6))",
                    ),
                    family_is("NPlusSemidirectR2"),
                ),
                case(
                    "named:bounded",
                    Family::Levi,
                    ConjugatorSchema::translation_xy(
                        Growth::constant(0.5).plus(n_pow(1.0, -1.0)),
                        Growth::constant(-1.0),
                        "(I, (0.5 + 1/n, -1))",
                    ),
                    family_is("Levi"),
                ),
                case(
                    "named:bounded_rotating",
                    Family::Levi,
                    ConjugatorSchema::iwasawa(
                        Growth::log(1.0),
                        Growth::constant(0.3),
                        Growth::constant(-0.5),
                        [Growth::constant(1.0), n_pow(2.0, -0.5)],
                        "(u(-0.5) a(0.3) k(ln n), (1, 2/sqrt n))",
                    ),
                    family_is("Levi"),
                ),
            ]
        }
        Theorem::Compact => vec![
            case("named:vertical", Family::MaximalCompact, along(0.0, 1.0, "(I, (0, n))"), line_where("0", |c| c.abs() <= 0.05)),
            case(
                "named:horizontal",
                Family::MaximalCompact,
                along(1.0, 0.0, "(I, (n, 0))"),
                line_where("infinite", |c| c.is_infinite() || c.abs() >= 20.0),
            ),
            case(
                "named:unipotent",
                Family::MaximalCompact,
                ConjugatorSchema::iwasawa(z(), z(), n_pow(1.0, 1.0), [z(), z()], "(u(n), 0)"),
                Box::new(|r| {
                    family_is("TildeNPlus")(r)?;
                    let k = r.classification.flags.component_count;
                    if k == 2 {
                        Ok(format!("TildeNPlus with 2 components (residual {:.3e})", r.classification.residual))
                    } else {
                        Err(format!("TildeNPlus fitted but {k} component(s) detected"))
                    }
                }),
            ),
            case(
                "named:sloped",
                Family::MaximalCompact,
                along(1.0, 2.0, "(I, (n, 2n))"),
                line_where("finite and nonzero", |c| c.is_finite() && c.abs() > 0.05),
            ),
        ],
        Theorem::Diagonal => {
            let heis: &'static [&'static str] = &["LineV", "HeisenbergLine", "Diagonal"];
            vec![
                case(
                    "named:s0_beta_over_alpha_to_0",
                    Family::Diagonal,
                    ConjugatorSchema::translation_xy(n_pow(1.0, 1.0), n_pow(1.0, 0.5), "(I, (n, sqrt n))"),
                    one_of(heis),
                ),
                case(
                    "named:s0_alpha_over_beta_to_0",
                    Family::Diagonal,
                    ConjugatorSchema::translation_xy(n_pow(1.0, 0.5), n_pow(1.0, 1.0), "(I, (sqrt n, n))"),
                    one_of(heis),
                ),
                case(
                    "named:s0_beta_over_alpha_to_c",
                    Family::Diagonal,
                    along(1.0, 2.0, "(I, (n, 2n))"),
                    line_where("-2 within 0.05", |c| (c + 2.0).abs() <= 0.05),
                ),
                case(
                    "named:s_over_beta_bounded",
                    Family::Diagonal,
                    ConjugatorSchema::iwasawa(
                        z(),
                        z(),
                        n_pow(0.5, 1.0),
                        [n_pow(1.0, 2.0).plus(n_pow(1.0, 1.0)), n_pow(1.0, 1.0)],
                        "(u(n/2), (n^2 + n, n))",
                    ),
                    one_of(heis),
                ),
                case(
                    "named:beta_over_s_bounded",
                    Family::Diagonal,
                    ConjugatorSchema::iwasawa(
                        z(),
                        z(),
                        n_pow(1.0, 1.0),
                        [n_pow(1.0, 2.0).plus(n_pow(1.0, 1.0)), n_pow(0.5, 1.0)],
                        "(u(n), (n^2 + n, n/2))",
                    ),
                    one_of(heis),
                ),
            ]
        }
        Theorem::Borel => {
            let borel: &'static [&'static str] = &["Borel", "NPlusTimesXAxis", "R2Full"];
            vec![
                case("named:vertical", Family::Borel, along(0.0, 1.0, "(I, (0, n))"), family_is("R2Full")),
                case("named:horizontal", Family::Borel, along(1.0, 0.0, "(I, (n, 0))"), family_is("NPlusTimesXAxis")),
                case(
                    "named:sqrt_0.1",
                    Family::Borel,
                    ConjugatorSchema::translation_xy(n_pow(1.0, 1.0), n_pow(0.1, 0.5), "(I, (n, 0.1 sqrt n))"),
                    one_of(borel),
                ),
                case(
                    "named:sqrt_1",
                    Family::Borel,
                    ConjugatorSchema::translation_xy(n_pow(1.0, 1.0), n_pow(1.0, 0.5), "(I, (n, sqrt n))"),
                    one_of(borel),
                ),
            ]
        }
        Theorem::Unipotent => vec![case(
            "named:vertical",
            Family::UnipotentUpper,
            along(0.0, 1.0, "(I, (0, n))"),
            line_where("0", |c| c.abs() <= 0.05),
        )],
    }
}

fn judge(id: &str, r: &LimitReport, check: &Check, base: &SubgroupDescriptor) -> CaseResult {
    let (status, detail) = if !r.unipotent_consistent {
        (Status::Fail, "translations diverge but the fitted limit has non-unipotent matrix parts".to_string())
    } else if r.is_inconclusive() {
        (
            Status::Inconclusive,
            format!(
                "no definitive limit: best fit {} residual {:.3e}, trace {}",
                r.classification.descriptor,
                r.classification.residual,
                r.trace.verdict.as_str()
            ),
        )
    } else {
        match check(r) {
            Ok(d) => (Status::Pass, d),
            Err(d) => (Status::Fail, d),
        }
    };
    CaseResult {
        id: id.to_string(),
        status,
        detail,
        limit: Some(r.to_json(base)),
        trace_csv: Some(r.trace.to_csv()),
    }
}

pub(super) fn named_cases(t: Theorem, profile: Profile, w: &Window, tol: f64) -> Result<Vec<CaseResult>> {
    let indices = profile.indices();
    let mut out = Vec::new();
    let mut classifications: Vec<Classification> = Vec::new();
    for c in named(t) {
        let base = SubgroupDescriptor::new(c.base);
        let r = analyze(&base, &c.schema, w, &indices, tol)?;
        out.push(judge(c.id, &r, &c.check, &base));
        if c.id == "named:translation_x" {
            out.push(decay_case(&base, &c.schema, w, &indices, tol)?);
        }
        classifications.push(r.classification);
    }
    if t == Theorem::Diagonal {
        let ok = dimension_check(&classifications, 1);
        out.push(CaseResult {
            id: "named:dimension_check".into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: format!(
                "fitted dimensions {:?} against base dimension 1",
                classifications.iter().filter(|c| c.definitive).map(|c| c.descriptor.dimension()).collect::<Vec<_>>()
            ),
            limit: None,
            trace_csv: None,
        });
    }
    Ok(out)
}

/// Distance to the unconjugated `N⁺ ⋉ R²` at `n = 1000` is within `tol` and at
/// most a tenth of its value at `n = 10`.
fn decay_case(
    base: &SubgroupDescriptor,
    schema: &ConjugatorSchema,
    w: &Window,
    indices: &[u64],
    tol: f64,
) -> Result<CaseResult> {
    let target = SubgroupDescriptor::new(Family::NPlusSemidirectR2);
    let trace = run_sequence(base, schema, &target, w, indices, tol)?;
    let at = |n: u64| indices.iter().position(|&m| m == n).map_or(f64::NAN, |i| trace.distances[i]);
    let (d10, d1000) = (at(10), at(1000));
    let certified = trace.certified.iter().all(|&c| c);
    let status = if !certified {
        Status::Inconclusive
    } else if d1000 <= tol && d1000 <= d10 / 10.0 {
        Status::Pass
    } else {
        Status::Fail
    };
    Ok(CaseResult {
        id: "named:translation_x_decay".into(),
        status,
        detail: format!("distance {d10:.4e} at n=10, {d1000:.4e} at n=1000"),
        limit: Some(trace.to_json(base, &target)),
        trace_csv: Some(trace.to_csv()),
    })
}
