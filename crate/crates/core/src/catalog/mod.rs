//! The subgroup families that occur as conjugacy limits in `SL(2,R) ⋉ R²`.
//!
//! A [`SubgroupDescriptor`] is a family (with its shape constants, such as the slope
//! of a translation line) together with an outer conjugator `h`; the subgroup it
//! names is `h F h⁻¹`. Families are parametrized by group coordinates whose count is
//! the family's dimension.

mod json;
mod prepared;

pub use json::{descriptor_from_json, descriptor_from_value, descriptor_to_json, ConjugatorJson, DescriptorJson};
pub use prepared::{DistanceResult, Prepared};

use crate::error::{Error, Result};
use crate::group::{conj, dist, inv, mul, GroupElement, Mat2, Vec2};
use crate::lie::LieAlgebraElement;
use crate::minimize::golden_section;
use crate::window::Window;
use std::fmt;

/// Slope of a translation line `{(I, (t, ct))}`; `Infinite` is the vertical line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Slope {
    Finite(f64),
    Infinite,
}

impl Slope {
    /// Unit direction of the line.
    pub fn direction(self) -> Vec2 {
        match self {
            Slope::Finite(c) => {
                let n = (1.0 + c * c).sqrt();
                Vec2::new(1.0 / n, c / n)
            }
            Slope::Infinite => Vec2::new(0.0, 1.0),
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(c) => write!(f, "{c}"),
            Slope::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    /// `SL(2,R)` embedded as `(g, 0)`.
    Levi,
    /// `SO(2)`, the rotations `[[cos θ, sin θ], [−sin θ, cos θ]]`.
    MaximalCompact,
    /// `diag(a, 1/a)`, `a > 0`.
    Diagonal,
    /// Upper triangular matrices with positive diagonal.
    Borel,
    /// `Borel ⋉ R²`.
    BorelFull,
    /// `([[1, x], [0, 1]], 0)`.
    UnipotentUpper,
    /// `([[1, x], [0, 1]], (cx, 0))`.
    UnipotentC(f64),
    /// `(±[[1, s], [0, 1]], 0)`, two components.
    TildeNPlus,
    /// Pure translations along a line.
    LineV(Slope),
    /// `([[1, at], [0, 1]], (ct + abt²/2, bt))`, a one-parameter subgroup of the
    /// Heisenberg group `N⁺ ⋉ R²`.
    HeisenbergLine { a: f64, b: f64, c: f64 },
    NPlusSemidirectR2,
    R2Full,
    /// `N⁺ ⋉ {(t, 0)}`.
    NPlusTimesXAxis,
}

/// All family tags, in the tie-breaking order used by the classifier within one
/// dimension (more specific names first).
pub const FAMILY_TAGS: [&str; 13] = [
    "LineV",
    "UnipotentUpper",
    "UnipotentC",
    "MaximalCompact",
    "Diagonal",
    "TildeNPlus",
    "HeisenbergLine",
    "R2Full",
    "NPlusTimesXAxis",
    "Borel",
    "NPlusSemidirectR2",
    "Levi",
    "BorelFull",
];

/// Coordinate chart of a family: points are `sheet · raw(base + p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    pub sheet: f64,
    pub base: Vec<f64>,
    /// Optional `|p_j| ≤ bound` on individual coordinates (angles).
    pub bounds: Vec<Option<f64>>,
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::Levi => "Levi",
            Family::MaximalCompact => "MaximalCompact",
            Family::Diagonal => "Diagonal",
            Family::Borel => "Borel",
            Family::BorelFull => "BorelFull",
            Family::UnipotentUpper => "UnipotentUpper",
            Family::UnipotentC(_) => "UnipotentC",
            Family::TildeNPlus => "TildeNPlus",
            Family::LineV(_) => "LineV",
            Family::HeisenbergLine { .. } => "HeisenbergLine",
            Family::NPlusSemidirectR2 => "NPlusSemidirectR2",
            Family::R2Full => "R2Full",
            Family::NPlusTimesXAxis => "NPlusTimesXAxis",
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Family::Levi | Family::NPlusSemidirectR2 => 3,
            Family::BorelFull => 4,
            Family::Borel | Family::R2Full | Family::NPlusTimesXAxis => 2,
            _ => 1,
        }
    }

    pub fn is_connected(&self) -> bool {
        !matches!(self, Family::TildeNPlus)
    }

    /// Whether the family contains pure translations in every direction.
    pub fn contains_full_r2(&self) -> bool {
        matches!(self, Family::NPlusSemidirectR2 | Family::BorelFull | Family::R2Full)
    }

    /// Whether the family contains an element with matrix part `−(unipotent)`.
    pub fn has_negative_sheet(&self) -> bool {
        matches!(self, Family::Levi | Family::MaximalCompact | Family::TildeNPlus)
    }

    pub fn is_abelian(&self) -> bool {
        !matches!(
            self,
            Family::Levi | Family::Borel | Family::BorelFull | Family::NPlusSemidirectR2
        )
    }

    /// Whether every matrix part is `±` a unipotent.
    pub fn is_unipotent(&self) -> bool {
        !matches!(
            self,
            Family::Levi | Family::MaximalCompact | Family::Diagonal | Family::Borel | Family::BorelFull
        )
    }

    /// Shape constants serialized as the descriptor's `params`.
    pub fn shape_params(&self) -> Vec<Param> {
        match *self {
            Family::UnipotentC(c) => vec![Param::Real(c)],
            Family::LineV(Slope::Finite(c)) => vec![Param::Real(c)],
            Family::LineV(Slope::Infinite) => vec![Param::Infinite],
            Family::HeisenbergLine { a, b, c } => vec![Param::Real(a), Param::Real(b), Param::Real(c)],
            _ => Vec::new(),
        }
    }

    pub fn from_tag(tag: &str, params: &[Param]) -> Result<Family> {
        let real = |i: usize| -> Result<f64> {
            match params.get(i) {
                Some(Param::Real(v)) if v.is_finite() => Ok(*v),
                Some(_) => Err(Error::InvalidDescriptor(format!(
                    "{tag}: parameter {i} must be a finite real"
                ))),
                None => Err(Error::InvalidDescriptor(format!("{tag}: missing parameter {i}"))),
            }
        };
        let expect = |n: usize| -> Result<()> {
            if params.len() == n {
                Ok(())
            } else {
                Err(Error::InvalidDescriptor(format!(
                    "{tag} takes {n} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let family = match tag {
            "Levi" => Family::Levi,
            "MaximalCompact" => Family::MaximalCompact,
            "Diagonal" => Family::Diagonal,
            "Borel" => Family::Borel,
            "BorelFull" => Family::BorelFull,
            "UnipotentUpper" => Family::UnipotentUpper,
            "TildeNPlus" => Family::TildeNPlus,
            "NPlusSemidirectR2" => Family::NPlusSemidirectR2,
            "R2Full" => Family::R2Full,
            "NPlusTimesXAxis" => Family::NPlusTimesXAxis,
            "UnipotentC" => {
                expect(1)?;
                return Ok(Family::UnipotentC(real(0)?));
            }
            "LineV" => {
                expect(1)?;
                return Ok(match params[0] {
                    Param::Infinite => Family::LineV(Slope::Infinite),
                    Param::Real(_) => Family::LineV(Slope::Finite(real(0)?)),
                });
            }
            "HeisenbergLine" => {
                expect(3)?;
                return Family::heisenberg(real(0)?, real(1)?, real(2)?);
            }
            other => return Err(Error::InvalidDescriptor(format!("unknown family `{other}`"))),
        };
        expect(0)?;
        Ok(family)
    }

    /// `V_{(a,b,c)}`; rejects `(0, 0, 0)`.
    pub fn heisenberg(a: f64, b: f64, c: f64) -> Result<Family> {
        if a == 0.0 && b == 0.0 && c == 0.0 {
            return Err(Error::InvalidDescriptor(
                "HeisenbergLine requires (a, b, c) != (0, 0, 0)".into(),
            ));
        }
        Ok(Family::HeisenbergLine { a, b, c })
    }

    /// The unconjugated family element at group coordinates `p` on the given sheet.
    pub fn raw_element(&self, p: &[f64], sheet: f64) -> GroupElement {
        let el = match *self {
            Family::Levi => GroupElement::from_matrix(
                Mat2::upper_unipotent(p[2]) * Mat2::diag(p[1].exp(), (-p[1]).exp()) * compact(p[0]),
            ),
            Family::MaximalCompact => GroupElement::from_matrix(compact(p[0])),
            Family::Diagonal => GroupElement::from_matrix(Mat2::diag(p[0].exp(), (-p[0]).exp())),
            Family::Borel => GroupElement::from_matrix(Mat2::new(p[0].exp(), p[1], 0.0, (-p[0]).exp())),
            Family::BorelFull => GroupElement::new(
                Mat2::new(p[0].exp(), p[1], 0.0, (-p[0]).exp()),
                Vec2::new(p[2], p[3]),
            ),
            Family::UnipotentUpper | Family::TildeNPlus => {
                GroupElement::from_matrix(Mat2::upper_unipotent(p[0]))
            }
            Family::UnipotentC(c) => {
                GroupElement::new(Mat2::upper_unipotent(p[0]), Vec2::new(c * p[0], 0.0))
            }
            Family::LineV(Slope::Finite(c)) => GroupElement::from_translation(Vec2::new(p[0], c * p[0])),
            Family::LineV(Slope::Infinite) => GroupElement::from_translation(Vec2::new(0.0, p[0])),
            Family::HeisenbergLine { a, b, c } => {
                let t = p[0];
                GroupElement::new(
                    Mat2::upper_unipotent(a * t),
                    Vec2::new(c * t + a * b * t * t / 2.0, b * t),
                )
            }
            Family::NPlusSemidirectR2 => {
                GroupElement::new(Mat2::upper_unipotent(p[0]), Vec2::new(p[1], p[2]))
            }
            Family::R2Full => GroupElement::from_translation(Vec2::new(p[0], p[1])),
            Family::NPlusTimesXAxis => {
                GroupElement::new(Mat2::upper_unipotent(p[0]), Vec2::new(p[1], 0.0))
            }
        };
        if sheet < 0.0 {
            GroupElement::new(-el.matrix, el.translation)
        } else {
            el
        }
    }

    /// Charts covering the family: one per component, plus a second chart around
    /// `−I` for families that contain it through a periodic angle.
    pub fn charts(&self) -> Vec<Chart> {
        use std::f64::consts::{FRAC_PI_2, PI};
        let k = self.dimension();
        let zero = vec![0.0; k];
        let free = vec![None; k];
        match self {
            Family::MaximalCompact | Family::Levi => {
                let mut bounds = free.clone();
                bounds[0] = Some(FRAC_PI_2);
                let mut around_pi = zero.clone();
                around_pi[0] = PI;
                vec![
                    Chart { sheet: 1.0, base: zero, bounds: bounds.clone() },
                    Chart { sheet: 1.0, base: around_pi, bounds },
                ]
            }
            Family::TildeNPlus => vec![
                Chart { sheet: 1.0, base: zero.clone(), bounds: free.clone() },
                Chart { sheet: -1.0, base: zero, bounds: free },
            ],
            _ => vec![Chart { sheet: 1.0, base: zero, bounds: free }],
        }
    }

    /// Basis of the Lie algebra of the (identity component of the) family.
    pub fn lie_basis(&self) -> Vec<LieAlgebraElement> {
        let e = Mat2::new(0.0, 1.0, 0.0, 0.0);
        let h = Mat2::new(1.0, 0.0, 0.0, -1.0);
        let k = Mat2::new(0.0, 1.0, -1.0, 0.0);
        let m = |m: Mat2| LieAlgebraElement::new(m, Vec2::ZERO);
        let t = |x: f64, y: f64| LieAlgebraElement::new(Mat2::ZERO, Vec2::new(x, y));
        match *self {
            Family::Levi => vec![m(k), m(h), m(e)],
            Family::MaximalCompact => vec![m(k)],
            Family::Diagonal => vec![m(h)],
            Family::Borel => vec![m(h), m(e)],
            Family::BorelFull => vec![m(h), m(e), t(1.0, 0.0), t(0.0, 1.0)],
            Family::UnipotentUpper | Family::TildeNPlus => vec![m(e)],
            Family::UnipotentC(c) => vec![LieAlgebraElement::new(e, Vec2::new(c, 0.0))],
            Family::LineV(Slope::Finite(c)) => vec![t(1.0, c)],
            Family::LineV(Slope::Infinite) => vec![t(0.0, 1.0)],
            Family::HeisenbergLine { a, b, c } => {
                vec![LieAlgebraElement::new(e.scale(a), Vec2::new(c, b))]
            }
            Family::NPlusSemidirectR2 => vec![m(e), t(1.0, 0.0), t(0.0, 1.0)],
            Family::R2Full => vec![t(1.0, 0.0), t(0.0, 1.0)],
            Family::NPlusTimesXAxis => vec![m(e), t(1.0, 0.0)],
        }
    }

    /// Exact distance from `x` to the unconjugated family, where one exists.
    pub fn closed_form_distance(&self, x: &GroupElement) -> Option<f64> {
        let g = x.matrix;
        let v = x.translation;
        let off_n = |g: &Mat2| ((g.a11 - 1.0).powi(2) + g.a21.powi(2) + (g.a22 - 1.0).powi(2)).sqrt();
        match *self {
            Family::Levi => Some(v.norm()),
            Family::R2Full => Some((g - Mat2::IDENTITY).frobenius()),
            Family::NPlusSemidirectR2 => Some(off_n(&g)),
            Family::NPlusTimesXAxis => Some(off_n(&g) + v.y.abs()),
            Family::UnipotentUpper => Some(off_n(&g) + v.norm()),
            Family::TildeNPlus => Some(off_n(&g).min(off_n(&-g)) + v.norm()),
            Family::LineV(slope) => {
                let d = slope.direction();
                Some((g - Mat2::IDENTITY).frobenius() + v.cross(d).abs())
            }
            Family::UnipotentC(c) => {
                // Convex in x; the minimizer lies between the two terms' minimizers.
                let rest = (g.a11 - 1.0).powi(2) + g.a21.powi(2) + (g.a22 - 1.0).powi(2);
                let f = |s: f64| (rest + (g.a12 - s).powi(2)).sqrt() + (v.x - c * s).hypot(v.y);
                let mut lo = g.a12;
                let mut hi = if c != 0.0 { v.x / c } else { g.a12 };
                if lo > hi {
                    std::mem::swap(&mut lo, &mut hi);
                }
                let (_, val) = golden_section(f, lo - 1e-9, hi + 1e-9, 1e-13 * (1.0 + hi.abs()));
                Some(val.min(f(lo)).min(f(hi)))
            }
            _ => None,
        }
    }

    /// Invariance of the family under conjugation by `(b, w)` with `b` upper
    /// triangular: `Full` if any such element, `MatrixOnly` if only `w = 0`.
    fn upper_triangular_invariance(&self) -> Invariance {
        match self {
            Family::NPlusSemidirectR2 | Family::BorelFull | Family::NPlusTimesXAxis | Family::R2Full => {
                Invariance::Full
            }
            Family::Borel => Invariance::MatrixOnly,
            _ => Invariance::None,
        }
    }
}

#[derive(PartialEq)]
enum Invariance {
    Full,
    MatrixOnly,
    None,
}

/// Element of the maximal compact subgroup, `[[cos θ, sin θ], [−sin θ, cos θ]]`.
pub fn compact(theta: f64) -> Mat2 {
    Mat2::rotation(-theta)
}

/// Descriptor parameter: a real, or `∞` for the vertical translation line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Param {
    Real(f64),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubgroupDescriptor {
    pub family: Family,
    pub conjugator: GroupElement,
}

impl fmt::Display for SubgroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family.tag())?;
        let params = self.family.shape_params();
        if !params.is_empty() {
            let s: Vec<String> = params
                .iter()
                .map(|p| match p {
                    Param::Real(v) => format!("{v:.6}"),
                    Param::Infinite => "inf".into(),
                })
                .collect();
            write!(f, "({})", s.join(", "))?;
        }
        if self.conjugator != GroupElement::IDENTITY {
            write!(f, " conjugated by {}", self.conjugator)?;
        }
        Ok(())
    }
}

impl SubgroupDescriptor {
    pub fn new(family: Family) -> Self {
        SubgroupDescriptor { family, conjugator: GroupElement::IDENTITY }
    }

    pub fn with_conjugator(family: Family, conjugator: GroupElement) -> Self {
        SubgroupDescriptor { family, conjugator }
    }

    pub fn dimension(&self) -> usize {
        self.family.dimension()
    }

    /// Element at group coordinates `p` on the given sheet, conjugated.
    pub fn element(&self, p: &[f64], sheet: f64) -> GroupElement {
        conj(&self.conjugator, &self.family.raw_element(p, sheet))
    }

    /// Conjugator reduced modulo the family's normalizer, split as a rotation and
    /// a remainder: `h ≡ (k, 0) · rest`.
    pub(crate) fn split_conjugator(&self) -> (Mat2, GroupElement) {
        let h = self.conjugator;
        if matches!(self.family, Family::R2Full) {
            return (Mat2::IDENTITY, GroupElement::IDENTITY);
        }
        if matches!(self.family, Family::Levi) {
            // (g, v) L (g, v)⁻¹ = (I, v) L (I, −v); rotate v onto the first axis.
            let v = h.translation;
            let k = Mat2::rotation(v.y.atan2(v.x));
            return (k, GroupElement::from_translation(Vec2::new(v.norm(), 0.0)));
        }
        let g = h.matrix;
        let angle = g.a21.atan2(g.a11);
        let k = Mat2::rotation(angle);
        let b = k.transpose() * g;
        let w = k.transpose() * h.translation;
        let rest = match self.family.upper_triangular_invariance() {
            Invariance::Full => GroupElement::IDENTITY,
            Invariance::MatrixOnly => {
                // (b, w) = (I, w)(b, 0) and (b, 0) normalizes the family.
                GroupElement::from_translation(w)
            }
            Invariance::None => GroupElement::new(b, w),
        };
        (k, rest)
    }
}

fn is_identity(x: &GroupElement) -> bool {
    dist(x, &GroupElement::IDENTITY) <= 1e-14
}

/// Element of the family at group coordinates `params`.
pub fn parametrize(d: &SubgroupDescriptor, params: &[f64]) -> Result<GroupElement> {
    let k = d.dimension();
    if params.len() != k {
        return Err(Error::Arity { expected: k, got: params.len() });
    }
    Ok(d.element(params, 1.0))
}

/// `inf_p dist(parametrize(d, p), x)`.
pub fn distance_to(d: &SubgroupDescriptor, x: &GroupElement) -> f64 {
    distance_to_certified(d, x).value
}

pub fn distance_to_certified(d: &SubgroupDescriptor, x: &GroupElement) -> DistanceResult {
    if let Some(v) = closed_form(d, x) {
        return DistanceResult { value: v, certified: true };
    }
    let reach = (2.0 * crate::group::norm(x)).max(1.0) + 0.5;
    Prepared::new(d, &Window { radius: reach, mesh: (reach / 40.0).max(0.01) }).distance(x)
}

/// Closed-form distance when the conjugator reduces to a rotation, which is an
/// isometry of `dist`.
pub(crate) fn closed_form(d: &SubgroupDescriptor, x: &GroupElement) -> Option<f64> {
    let (k, rest) = d.split_conjugator();
    if !is_identity(&rest) {
        return None;
    }
    let kk = GroupElement::from_matrix(k);
    let pulled = conj(&inv(&kk), x);
    d.family.closed_form_distance(&pulled)
}

/// Finite sample of the family inside the window ball, covering it at the
/// window's mesh (see [`Window::effective_mesh`] for dimensions above 2).
pub fn sample(d: &SubgroupDescriptor, w: &Window) -> Vec<GroupElement> {
    Prepared::new(d, w).samples().to_vec()
}

/// `d` with conjugator replaced by `h · conjugator`.
pub fn conjugate_descriptor(h: &GroupElement, d: &SubgroupDescriptor) -> SubgroupDescriptor {
    SubgroupDescriptor { family: d.family, conjugator: mul(h, &d.conjugator) }
}

/// Lie algebra basis of the descriptor's identity component, transported by the
/// conjugator. The flag is true when the family is disconnected and only the
/// identity component is described.
pub fn lie_algebra_basis(d: &SubgroupDescriptor) -> (Vec<LieAlgebraElement>, bool) {
    let basis = d
        .family
        .lie_basis()
        .into_iter()
        .map(|x| x.adjoint(&d.conjugator))
        .collect();
    (basis, !d.family.is_connected())
}

/// `dist(p(t) p(s), p(t + s))` for a one-dimensional family.
pub fn one_param_check(d: &SubgroupDescriptor, t: f64, s: f64) -> Result<f64> {
    if d.dimension() != 1 {
        return Err(Error::NotOneDimensional(d.family.tag()));
    }
    let pt = d.element(&[t], 1.0);
    let ps = d.element(&[s], 1.0);
    Ok(dist(&mul(&pt, &ps), &d.element(&[t + s], 1.0)))
}

/// Numerical rank of a list of Lie algebra elements.
pub fn rank(elements: &[LieAlgebraElement], rel_tol: f64) -> usize {
    if elements.is_empty() {
        return 0;
    }
    let rows: Vec<f64> = elements.iter().flat_map(|e| e.to_array()).collect();
    let m = nalgebra::DMatrix::from_row_slice(elements.len(), 6, &rows);
    let sv = m.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > rel_tol * max && s > 1e-300).count()
}

#[cfg(test)]
mod tests;
