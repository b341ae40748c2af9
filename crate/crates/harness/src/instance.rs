//! Instance files: one JSON document carrying field, weight, poset,
//! labeling and (optionally) a code. Poset elements are 1-based on disk.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;
use wpbm_core::{BlockSpace, Code, Elem, Field, Labeling, Poset, WeightFn, WeightKind};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("inconsistent {field}: {reason}")]
    Consistency { field: &'static str, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub q: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum WeightSpec {
    Hamming,
    Lee,
    Table { values: Vec<u32> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetSpec {
    pub elements: usize,
    /// `[a, b]` means `a < b`.
    #[serde(default)]
    pub cover: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CodeSpec {
    Generator { rows: Vec<Vec<u32>> },
    List { words: Vec<Vec<u32>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub field: FieldSpec,
    pub weight: WeightSpec,
    pub poset: PosetSpec,
    pub labeling: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<CodeSpec>,
}

fn consistency(field: &'static str, e: impl ToString) -> InstanceError {
    InstanceError::Consistency { field, reason: e.to_string() }
}

impl Instance {
    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        serde_json::from_str(text)
            .map_err(|e| InstanceError::Parse { line: e.line(), reason: e.to_string() })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, InstanceError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|source| InstanceError::Io { path: path.display().to_string(), source })?;
        let inst = Self::parse(&text)?;
        inst.space(wpbm_core::DEFAULT_MAX_SPACE)?;
        if inst.code.is_some() {
            inst.code(wpbm_core::DEFAULT_MAX_SPACE)?;
        }
        Ok(inst)
    }

    /// Writes the canonical form, pretty-printed.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), InstanceError> {
        let path = path.as_ref();
        fs::write(path, self.canonical()?.to_pretty() + "\n")
            .map_err(|source| InstanceError::Io { path: path.display().to_string(), source })
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances serialize")
    }

    pub fn to_compact(&self) -> String {
        serde_json::to_string(self).expect("instances serialize")
    }

    pub fn space(&self, max_space: u64) -> Result<BlockSpace, InstanceError> {
        let field = Field::new(self.field.q).map_err(|e| consistency("field", e))?;
        let weight = match &self.weight {
            WeightSpec::Hamming => WeightFn::hamming(&field),
            WeightSpec::Lee => WeightFn::lee(&field).map_err(|e| consistency("weight", e))?,
            WeightSpec::Table { values } => {
                WeightFn::custom(&field, values).map_err(|e| consistency("weight", e))?
            }
        };
        let mut covers = Vec::with_capacity(self.poset.cover.len());
        for &[a, b] in &self.poset.cover {
            if a == 0 || b == 0 || a > self.poset.elements || b > self.poset.elements {
                return Err(consistency(
                    "poset",
                    format!("cover [{a}, {b}] outside 1..={}", self.poset.elements),
                ));
            }
            covers.push((a - 1, b - 1));
        }
        let poset = Poset::from_cover_relations(self.poset.elements, &covers)
            .map_err(|e| consistency("poset", e))?;
        let labeling =
            Labeling::new(self.labeling.clone()).map_err(|e| consistency("labeling", e))?;
        Ok(BlockSpace::new(poset, labeling, weight)
            .map_err(|e| consistency("labeling", e))?
            .with_max_space(max_space))
    }

    pub fn code(&self, max_space: u64) -> Result<Code, InstanceError> {
        let space = self.space(max_space)?;
        let q = space.q() as u32;
        let convert = |vs: &[Vec<u32>]| -> Result<Vec<Vec<Elem>>, InstanceError> {
            vs.iter()
                .map(|v| {
                    if v.len() != space.n() {
                        return Err(consistency(
                            "code",
                            format!("word of length {}, expected {}", v.len(), space.n()),
                        ));
                    }
                    v.iter()
                        .map(|&x| {
                            if x < q {
                                Ok(x as Elem)
                            } else {
                                Err(consistency("code", format!("{x} is not in GF({q})")))
                            }
                        })
                        .collect()
                })
                .collect()
        };
        match &self.code {
            None => Err(consistency("code", "instance has no code")),
            Some(CodeSpec::Generator { rows }) => {
                let rows = convert(rows)?;
                Code::linear(space, rows).map_err(|e| consistency("code", e))
            }
            Some(CodeSpec::List { words }) => {
                if words.is_empty() {
                    return Err(consistency("code", "word list is empty"));
                }
                let words = convert(words)?;
                Code::explicit(space, words).map_err(|e| consistency("code", e))
            }
        }
    }

    pub fn from_space(space: &BlockSpace) -> Self {
        let weight = match space.weight_fn().kind() {
            WeightKind::Hamming => WeightSpec::Hamming,
            WeightKind::Lee => WeightSpec::Lee,
            WeightKind::Table => WeightSpec::Table { values: space.weight_fn().table().to_vec() },
        };
        let poset = space.poset();
        Instance {
            field: FieldSpec { q: space.q() as u32 },
            weight,
            poset: PosetSpec {
                elements: poset.len(),
                cover: poset.covers().into_iter().map(|(a, b)| [a + 1, b + 1]).collect(),
            },
            labeling: space.labeling().sizes().to_vec(),
            code: None,
        }
    }

    pub fn from_code(code: &Code) -> Self {
        let widen = |vs: &[Vec<Elem>]| -> Vec<Vec<u32>> {
            vs.iter().map(|v| v.iter().map(|&x| u32::from(x)).collect()).collect()
        };
        let spec = match (code.basis(), code.words()) {
            (Some(rows), _) => CodeSpec::Generator { rows: widen(rows) },
            (None, Some(words)) => CodeSpec::List { words: widen(words) },
            (None, None) => unreachable!("a code is linear or explicit"),
        };
        Instance { code: Some(spec), ..Self::from_space(code.space()) }
    }

    /// Hasse covers sorted, generator rows reduced, word lists sorted.
    pub fn canonical(&self) -> Result<Self, InstanceError> {
        if self.code.is_some() {
            Ok(Self::from_code(&self.code(u64::MAX)?))
        } else {
            Ok(Self::from_space(&self.space(u64::MAX)?))
        }
    }
}

/// Hex SHA-256 of the compact canonical JSON of a list of instances.
pub fn digest(instances: &[Instance]) -> String {
    let json = serde_json::to_string(instances).expect("instances serialize");
    hex::encode(Sha256::digest(json.as_bytes()))[..16].to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "field": {"q": 2},
        "weight": {"kind": "hamming"},
        "poset": {"elements": 1, "cover": []},
        "labeling": [1],
        "code": {"kind": "list", "words": [[0], [1]]}
    }"#;

    #[test]
    fn minimal_instance_loads() {
        let inst = Instance::parse(MINIMAL).unwrap();
        let code = inst.code(1 << 10).unwrap();
        assert_eq!(code.size(), 2);
        assert_eq!(code.min_distance().unwrap(), 1);
    }

    #[test]
    fn labeling_must_match_poset() {
        let text = MINIMAL.replace(r#""elements": 1"#, r#""elements": 2"#).replace("[1],", "[2],");
        let inst = Instance::parse(&text).unwrap();
        assert!(matches!(
            inst.space(1 << 10).unwrap_err(),
            InstanceError::Consistency { field: "labeling", .. }
        ));
    }

    #[test]
    fn bad_values_are_reported() {
        let text = MINIMAL.replace("[[0], [1]]", "[[0], [2]]");
        let err = Instance::parse(&text).unwrap().code(1 << 10).unwrap_err();
        assert!(matches!(err, InstanceError::Consistency { field: "code", .. }));
        let err = Instance::parse("{\n \"field\": 3 }").unwrap_err();
        assert!(matches!(err, InstanceError::Parse { line: 2, .. }));
    }

    #[test]
    fn canonical_form_is_a_fixed_point() {
        let text = r#"{"field":{"q":3},"weight":{"kind":"lee"},
            "poset":{"elements":3,"cover":[[1,2],[2,3],[1,3]]},"labeling":[1,2,1],
            "code":{"kind":"generator","rows":[[2,0,0,1],[1,1,0,0],[0,2,0,2]]}}"#;
        let inst = Instance::parse(text).unwrap();
        let canon = inst.canonical().unwrap();
        assert_eq!(canon.poset.cover, vec![[1, 2], [2, 3]]);
        assert_eq!(canon.canonical().unwrap(), canon);
        assert_eq!(digest(std::slice::from_ref(&canon)), digest(&[inst.canonical().unwrap()]));
        let CodeSpec::Generator { rows } = canon.code.unwrap() else { panic!() };
        assert_eq!(rows.len(), 2);
    }
}
