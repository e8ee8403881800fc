//! Conjugating sequences `n ↦ (g_n, v_n)`.

use crate::catalog::compact;
use crate::error::{Error, Result};
use crate::group::{GroupElement, Mat2, Vec2};
use serde::{Deserialize, Serialize};

/// One term `coef · n^pow · (ln n)^log`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coef: f64,
    #[serde(default)]
    pub pow: f64,
    #[serde(default)]
    pub log: u32,
}

/// A real sequence given as a finite sum of [`Term`]s.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Growth(pub Vec<Term>);

impl Growth {
    pub fn zero() -> Self {
        Growth(Vec::new())
    }

    pub fn constant(c: f64) -> Self {
        Growth(vec![Term { coef: c, pow: 0.0, log: 0 }])
    }

    /// `coef · n^pow`.
    pub fn power(coef: f64, pow: f64) -> Self {
        Growth(vec![Term { coef, pow, log: 0 }])
    }

    pub fn log(coef: f64) -> Self {
        Growth(vec![Term { coef, pow: 0.0, log: 1 }])
    }

    pub fn plus(mut self, other: Growth) -> Self {
        self.0.extend(other.0);
        self
    }

    pub fn eval(&self, n: u64) -> f64 {
        let n = n as f64;
        self.0
            .iter()
            .map(|t| t.coef * n.powf(t.pow) * n.ln().powi(t.log as i32))
            .sum()
    }

    fn validate(&self, what: &str) -> Result<()> {
        for t in &self.0 {
            if !t.coef.is_finite() || !t.pow.is_finite() || t.log > 8 || t.pow.abs() > 8.0 {
                return Err(Error::InvalidSchema(format!(
                    "{what}: terms need finite coef, |pow| ≤ 8 and log ≤ 8"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitEntry {
    pub n: u64,
    pub matrix: [[f64; 2]; 2],
    pub translation: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SchemaKind {
    /// `(I, growth(n) · direction)`.
    TranslationAlong { direction: [f64; 2], growth: Growth },
    /// `(u(s_n) · diag(e^{l_n}, e^{−l_n}) · k(θ_n), v_n)` with `u` upper unipotent and
    /// `k(θ) = [[cos θ, sin θ], [−sin θ, cos θ]]`.
    Iwasawa {
        #[serde(default)]
        theta: Growth,
        #[serde(default)]
        log_a: Growth,
        #[serde(default)]
        s: Growth,
        #[serde(default)]
        v: [Growth; 2],
    },
    Explicit { entries: Vec<ExplicitEntry> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjugatorSchema {
    #[serde(flatten)]
    pub kind: SchemaKind,
    pub description: String,
}

impl ConjugatorSchema {
    pub fn identity() -> Self {
        ConjugatorSchema {
            kind: SchemaKind::Iwasawa {
                theta: Growth::zero(),
                log_a: Growth::zero(),
                s: Growth::zero(),
                v: [Growth::zero(), Growth::zero()],
            },
            description: "identity".into(),
        }
    }

    pub fn translation(direction: Vec2, growth: Growth, description: impl Into<String>) -> Self {
        ConjugatorSchema {
            kind: SchemaKind::TranslationAlong { direction: [direction.x, direction.y], growth },
            description: description.into(),
        }
    }

    /// `(I, (x_n, y_n))` with independent growth per coordinate.
    pub fn translation_xy(x: Growth, y: Growth, description: impl Into<String>) -> Self {
        ConjugatorSchema {
            kind: SchemaKind::Iwasawa {
                theta: Growth::zero(),
                log_a: Growth::zero(),
                s: Growth::zero(),
                v: [x, y],
            },
            description: description.into(),
        }
    }

    pub fn iwasawa(
        theta: Growth,
        log_a: Growth,
        s: Growth,
        v: [Growth; 2],
        description: impl Into<String>,
    ) -> Self {
        ConjugatorSchema {
            kind: SchemaKind::Iwasawa { theta, log_a, s, v },
            description: description.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.description.trim().is_empty() {
            return Err(Error::InvalidSchema("description must be nonempty".into()));
        }
        match &self.kind {
            SchemaKind::TranslationAlong { direction, growth } => {
                if !direction.iter().all(|c| c.is_finite()) || direction == &[0.0, 0.0] {
                    return Err(Error::InvalidSchema("direction must be finite and nonzero".into()));
                }
                growth.validate("growth")
            }
            SchemaKind::Iwasawa { theta, log_a, s, v } => {
                theta.validate("theta")?;
                log_a.validate("log_a")?;
                s.validate("s")?;
                v[0].validate("v[0]")?;
                v[1].validate("v[1]")
            }
            SchemaKind::Explicit { entries } => {
                if entries.is_empty() {
                    return Err(Error::InvalidSchema("explicit schema needs entries".into()));
                }
                for (i, e) in entries.iter().enumerate() {
                    if e.n == 0 || entries[..i].iter().any(|o| o.n == e.n) {
                        return Err(Error::InvalidSchema(format!(
                            "entries[{i}]: n must be positive and unique"
                        )));
                    }
                    let m = Mat2::from_rows(e.matrix);
                    if !m.is_finite() || !e.translation.iter().all(|c| c.is_finite()) {
                        return Err(Error::InvalidSchema(format!("entries[{i}]: non-finite entry")));
                    }
                    if (m.det() - 1.0).abs() > 1e-6 * (1.0 + m.frobenius().powi(2)) {
                        return Err(Error::InvalidSchema(format!(
                            "entries[{i}]: matrix determinant must be 1"
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    /// `(g_n, v_n)`.
    pub fn at(&self, n: u64) -> Result<GroupElement> {
        match &self.kind {
            SchemaKind::TranslationAlong { direction, growth } => {
                let g = growth.eval(n);
                Ok(GroupElement::from_translation(Vec2::new(direction[0] * g, direction[1] * g)))
            }
            SchemaKind::Iwasawa { theta, log_a, s, v } => {
                let l = log_a.eval(n);
                let m = Mat2::upper_unipotent(s.eval(n)) * Mat2::diag(l.exp(), (-l).exp()) * compact(theta.eval(n));
                Ok(GroupElement::new(m.renormalized(), Vec2::new(v[0].eval(n), v[1].eval(n))))
            }
            SchemaKind::Explicit { entries } => entries
                .iter()
                .find(|e| e.n == n)
                .map(|e| {
                    GroupElement::new(
                        Mat2::from_rows(e.matrix).renormalized(),
                        Vec2::new(e.translation[0], e.translation[1]),
                    )
                })
                .ok_or_else(|| Error::InvalidSchema(format!("explicit schema has no entry for n = {n}"))),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: ConjugatorSchema = serde_json::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("schema is always serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growth_terms() {
        let g = Growth::power(2.0, 1.5).plus(Growth::log(3.0)).plus(Growth::constant(-1.0));
        let n = 100u64;
        let expected = 2.0 * 1000.0 + 3.0 * (100f64).ln() - 1.0;
        assert!((g.eval(n) - expected).abs() < 1e-9);
    }

    #[test]
    fn translation_schema() {
        let s = ConjugatorSchema::translation(Vec2::new(1.0, 2.0), Growth::power(1.0, 1.0), "(n, 2n)");
        assert_eq!(s.at(10).unwrap(), GroupElement::from_translation(Vec2::new(10.0, 20.0)));
    }

    #[test]
    fn iwasawa_schema_is_special_linear() {
        let s = ConjugatorSchema::iwasawa(
            Growth::constant(0.7),
            Growth::log(0.5),
            Growth::power(1.0, 1.0),
            [Growth::zero(), Growth::constant(1.0)],
            "mixed",
        );
        let g = s.at(1000).unwrap();
        assert!((g.matrix.det() - 1.0).abs() < 1e-9);
        assert_eq!(g.translation, Vec2::new(0.0, 1.0));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let s = ConjugatorSchema::iwasawa(
            Growth::zero(),
            Growth::zero(),
            Growth::power(1.0, 1.0),
            [Growth::zero(), Growth::zero()],
            "s_n = n",
        );
        let text = s.to_json().to_string();
        assert_eq!(ConjugatorSchema::from_json(&text).unwrap(), s);
        let explicit = r#"{"kind":"explicit","description":"two","entries":[
            {"n":1,"matrix":[[1,0],[0,1]],"translation":[1,0]},
            {"n":2,"matrix":[[2,0],[0,0.5]],"translation":[0,0]}]}"#;
        let e = ConjugatorSchema::from_json(explicit).unwrap();
        assert!(e.at(3).is_err());
        assert_eq!(e.at(2).unwrap().matrix, Mat2::diag(2.0, 0.5));
        for bad in [
            r#"{"kind":"translation_along","direction":[0,0],"growth":[],"description":"x"}"#,
            r#"{"kind":"translation_along","direction":[1,0],"growth":[],"description":""}"#,
            r#"{"kind":"explicit","entries":[{"n":1,"matrix":[[1,1],[1,1]],"translation":[0,0]}],"description":"x"}"#,
            r#"{"kind":"warp","description":"x"}"#,
        ] {
            assert!(ConjugatorSchema::from_json(bad).is_err(), "{bad}");
        }
    }
}
