//! `{family, params, conjugator: {matrix, translation}}` encoding of descriptors.
//! The vertical line's slope is written as the string `"inf"`.

use super::{Family, Param, SubgroupDescriptor};
use crate::error::{Error, Result};
use crate::group::{GroupElement, Mat2, Vec2};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjugatorJson {
    pub matrix: [[f64; 2]; 2],
    pub translation: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorJson {
    pub family: String,
    #[serde(default)]
    pub params: Vec<Value>,
    #[serde(default)]
    pub conjugator: Option<ConjugatorJson>,
}

impl From<&SubgroupDescriptor> for DescriptorJson {
    fn from(d: &SubgroupDescriptor) -> Self {
        let params = d
            .family
            .shape_params()
            .into_iter()
            .map(|p| match p {
                Param::Real(v) => Value::from(v),
                Param::Infinite => Value::from("inf"),
            })
            .collect();
        let h = d.conjugator;
        DescriptorJson {
            family: d.family.tag().to_string(),
            params,
            conjugator: Some(ConjugatorJson {
                matrix: h.matrix.rows(),
                translation: [h.translation.x, h.translation.y],
            }),
        }
    }
}

impl TryFrom<&DescriptorJson> for SubgroupDescriptor {
    type Error = Error;

    fn try_from(j: &DescriptorJson) -> Result<Self> {
        let params = j
            .params
            .iter()
            .enumerate()
            .map(|(i, v)| match v {
                Value::Number(n) => n
                    .as_f64()
                    .map(Param::Real)
                    .ok_or_else(|| Error::InvalidDescriptor(format!("params[{i}] is not a real"))),
                Value::String(s) if matches!(s.as_str(), "inf" | "∞" | "infinity") => Ok(Param::Infinite),
                _ => Err(Error::InvalidDescriptor(format!(
                    "params[{i}] must be a number or \"inf\""
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        let family = Family::from_tag(&j.family, &params)?;
        let conjugator = match &j.conjugator {
            None => GroupElement::IDENTITY,
            Some(c) => {
                let m = Mat2::from_rows(c.matrix);
                let v = Vec2::new(c.translation[0], c.translation[1]);
                if !m.is_finite() || !v.is_finite() {
                    return Err(Error::InvalidDescriptor("conjugator entries must be finite".into()));
                }
                if (m.det() - 1.0).abs() > 1e-6 * (1.0 + m.frobenius().powi(2)) {
                    return Err(Error::InvalidDescriptor(format!(
                        "conjugator matrix must have determinant 1, got {}",
                        m.det()
                    )));
                }
                GroupElement::new(m.renormalized(), v)
            }
        };
        Ok(SubgroupDescriptor { family, conjugator })
    }
}

pub fn descriptor_to_json(d: &SubgroupDescriptor) -> Value {
    serde_json::to_value(DescriptorJson::from(d)).expect("descriptor is always serializable")
}

pub fn descriptor_from_json(text: &str) -> Result<SubgroupDescriptor> {
    let j: DescriptorJson = serde_json::from_str(text)?;
    SubgroupDescriptor::try_from(&j)
}

pub fn descriptor_from_value(v: &Value) -> Result<SubgroupDescriptor> {
    let j: DescriptorJson = serde_json::from_value(v.clone())?;
    SubgroupDescriptor::try_from(&j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Slope;

    #[test]
    fn round_trip() {
        let h = GroupElement::new(Mat2::new(2.0, 1.0, 1.0, 1.0), Vec2::new(0.5, -3.0));
        for family in [
            Family::Levi,
            Family::LineV(Slope::Infinite),
            Family::LineV(Slope::Finite(-2.5)),
            Family::HeisenbergLine { a: 1.0, b: 0.5, c: -1.0 },
            Family::UnipotentC(2.0),
        ] {
            let d = SubgroupDescriptor::with_conjugator(family, h);
            let text = descriptor_to_json(&d).to_string();
            assert_eq!(descriptor_from_json(&text).unwrap(), d, "{text}");
        }
    }

    #[test]
    fn vertical_line_is_a_string() {
        let v = descriptor_to_json(&SubgroupDescriptor::new(Family::LineV(Slope::Infinite)));
        assert_eq!(v["params"][0], "inf");
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            r#"{"family":"Nope","params":[]}"#,
            r#"{"family":"LineV","params":[]}"#,
            r#"{"family":"Levi","params":[1]}"#,
            r#"{"family":"HeisenbergLine","params":[0,0,0]}"#,
            r#"{"family":"UnipotentC","params":["inf"]}"#,
            r#"{"family":"Levi","conjugator":{"matrix":[[2,0],[0,2]],"translation":[0,0]}}"#,
            r#"{"family":"Levi","extra":1}"#,
            r#"not json"#,
        ] {
            assert!(descriptor_from_json(bad).is_err(), "{bad}");
        }
        let d = descriptor_from_json(r#"{"family":"R2Full"}"#).unwrap();
        assert_eq!(d.conjugator, GroupElement::IDENTITY);
    }
}
