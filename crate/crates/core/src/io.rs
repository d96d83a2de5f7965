//! JSON documents for generated pairs.

use serde::{Deserialize, Serialize};

use crate::algebra::{GaussianInt, Vgbf};
use crate::constructions::ConstructionSpec;
use crate::error::{Error, Result};
use crate::golay::{is_gap, is_gcp, QamArray, QamSequence, INDEX_ORDER};

pub const PAIR_FORMAT: &str = "qamgolay-pair-v1";

/// A pair with its recipe and explicit sequence values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    pub format: String,
    pub q: usize,
    pub m: usize,
    pub index_order: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<ConstructionSpec>,
    pub f: Vgbf,
    pub g: Vgbf,
    pub f_values: Vec<GaussianInt>,
    pub g_values: Vec<GaussianInt>,
}

impl PairDocument {
    pub fn from_pair(spec: Option<ConstructionSpec>, f: Vgbf, g: Vgbf) -> Result<Self> {
        if f.q() != g.q() || f.m() != g.m() {
            return Err(Error::invalid("g", "shape differs from f"));
        }
        Ok(PairDocument {
            format: PAIR_FORMAT.to_string(),
            q: f.q(),
            m: f.m(),
            index_order: INDEX_ORDER.to_string(),
            spec,
            f_values: QamSequence::from_vgbf(&f).values().to_vec(),
            g_values: QamSequence::from_vgbf(&g).values().to_vec(),
            f,
            g,
        })
    }

    pub fn from_spec(spec: &ConstructionSpec) -> Result<Self> {
        let built = spec.build()?;
        Self::from_pair(Some(spec.clone()), built.f, built.g)
    }

    /// Checks internal consistency: format tags, shapes, stored values and,
    /// when a spec is present, that it rebuilds the same pair.
    pub fn validate(&self) -> Result<()> {
        if self.format != PAIR_FORMAT {
            return Err(Error::invalid("format", format!("expected {PAIR_FORMAT:?}")));
        }
        if self.index_order != INDEX_ORDER {
            return Err(Error::invalid("index_order", format!("expected {INDEX_ORDER:?}")));
        }
        for (name, v) in [("f", &self.f), ("g", &self.g)] {
            if v.q() != self.q || v.m() != self.m {
                return Err(Error::invalid(name, "q or m does not match the document"));
            }
        }
        if QamSequence::from_vgbf(&self.f).values() != self.f_values.as_slice() {
            return Err(Error::invalid("f_values", "do not match f"));
        }
        if QamSequence::from_vgbf(&self.g).values() != self.g_values.as_slice() {
            return Err(Error::invalid("g_values", "do not match g"));
        }
        if let Some(spec) = &self.spec {
            let built = spec.build()?;
            if built.f != self.f || built.g != self.g {
                return Err(Error::invalid("spec", "does not rebuild the stored pair"));
            }
        }
        Ok(())
    }

    pub fn sequences(&self) -> (QamSequence, QamSequence) {
        (QamSequence::from_vgbf(&self.f), QamSequence::from_vgbf(&self.g))
    }

    pub fn is_gcp(&self) -> Result<bool> {
        let (f, g) = self.sequences();
        is_gcp(&f, &g)
    }

    pub fn is_gap(&self) -> Result<bool> {
        is_gap(&QamArray::from_vgbf(&self.f), &QamArray::from_vgbf(&self.g))
    }
}

/// Reads either one document or a list of them.
pub fn parse_pair_documents(text: &str) -> Result<Vec<PairDocument>> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::invalid("json", e.to_string()))?;
    let parse = |v: serde_json::Value| {
        serde_json::from_value::<PairDocument>(v).map_err(|e| Error::invalid("pair document", e.to_string()))
    };
    match value {
        serde_json::Value::Array(items) => items.into_iter().map(parse).collect(),
        other => Ok(vec![parse(other)?]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::suite;

    #[test]
    fn round_trip_and_checks() {
        for spec in suite(3, 22, 3, 4).unwrap() {
            let doc = PairDocument::from_spec(&spec).unwrap();
            doc.validate().unwrap();
            assert!(doc.is_gcp().unwrap());
            assert!(doc.is_gap().unwrap());
            let text = serde_json::to_string(&doc).unwrap();
            let back = parse_pair_documents(&text).unwrap();
            assert_eq!(back, vec![doc.clone()]);
            assert_eq!(serde_json::to_string(&back[0]).unwrap(), text);
        }
    }

    #[test]
    fn tampered_document_rejected() {
        let spec = suite(4, 1, 3, 3).unwrap().remove(0);
        let mut doc = PairDocument::from_spec(&spec).unwrap();
        doc.f_values[0] = GaussianInt::ZERO;
        assert!(doc.validate().is_err());
        let mut doc = PairDocument::from_spec(&spec).unwrap();
        doc.format = "other".into();
        assert!(doc.validate().is_err());
        assert!(parse_pair_documents("{\"format\": 1}").is_err());
    }
}
