//! JSON instance documents.
//!
//! Two forms are accepted:
//!
//! ```json
//! {"p": 1, "q": 3, "t1": {"handle": ["q1","q2","q3","p1"], "leaves": []},
//!                  "t2": {"handle": ["q3","q2","q1","p1"], "leaves": []}}
//! {"q": 3, "pp1": [1, 2, 3], "pp2": [3, 2, 1]}
//! ```
//!
//! The second is the star (`p = 1`) written as two partial permutations.
//! Unknown fields are rejected. Leaves are recomputed from the handle and
//! must agree with the listed ones.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::broom::{Broom, BroomError, CodecError, RawBroom};
use crate::graph::{SpecError, SplitGraphSpec};

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("malformed instance JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("{which}: {source}")]
    Broom {
        which: &'static str,
        #[source]
        source: BroomError,
    },
    #[error("{which}: {source}")]
    Codec {
        which: &'static str,
        #[source]
        source: CodecError,
    },
    #[error("brooms are on different graphs")]
    SpecMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub p: u32,
    pub q: u32,
    pub t1: RawBroom,
    pub t2: RawBroom,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarInstanceDoc {
    pub q: u32,
    pub pp1: Vec<u32>,
    pub pp2: Vec<u32>,
}

/// Two canonical brooms on the same graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub t1: Broom,
    pub t2: Broom,
}

impl Instance {
    pub fn new(t1: Broom, t2: Broom) -> Result<Self, InstanceError> {
        if t1.spec() != t2.spec() {
            return Err(InstanceError::SpecMismatch);
        }
        Ok(Self { t1, t2 })
    }

    pub fn spec(&self) -> SplitGraphSpec {
        self.t1.spec()
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let star = value
            .as_object()
            .is_some_and(|o| o.contains_key("pp1") || o.contains_key("pp2"));
        if star {
            Self::from_star_doc(&serde_json::from_value(value)?)
        } else {
            Self::from_doc(&serde_json::from_value(value)?)
        }
    }

    pub fn from_doc(doc: &InstanceDoc) -> Result<Self, InstanceError> {
        let spec = SplitGraphSpec::new(doc.p, doc.q)?;
        let validate = |which, raw| {
            Broom::validate(spec, raw).map_err(|source| InstanceError::Broom { which, source })
        };
        Self::new(validate("t1", &doc.t1)?, validate("t2", &doc.t2)?)
    }

    pub fn from_star_doc(doc: &StarInstanceDoc) -> Result<Self, InstanceError> {
        let decode = |which, seq: &[u32]| {
            Broom::from_partial_permutation(seq, doc.q)
                .map_err(|source| InstanceError::Codec { which, source })
        };
        Self::new(decode("pp1", &doc.pp1)?, decode("pp2", &doc.pp2)?)
    }

    /// The canonical full-form document.
    pub fn to_doc(&self) -> InstanceDoc {
        let spec = self.spec();
        InstanceDoc {
            p: spec.p(),
            q: spec.q(),
            t1: self.t1.to_raw(),
            t2: self.t2.to_raw(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("instance documents serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexId;

    #[test]
    fn full_form() {
        let text = r#"{"p":1,"q":3,
            "t1":{"handle":["q1","q2","p1","q3"],"leaves":[]},
            "t2":{"handle":["p1"],"leaves":["q1","q2","q3"]}}"#;
        let inst = Instance::from_json(text).unwrap();
        assert_eq!(inst.t1.handle(), &[VertexId::q(1), VertexId::q(2), VertexId::p(1)]);
        assert!(inst.t1.is_leaf(VertexId::q(3)));
        // Canonical output is stable under a second load.
        let again = Instance::from_json(&inst.to_json()).unwrap();
        assert_eq!(again, inst);
    }

    #[test]
    fn star_form() {
        let inst = Instance::from_json(r#"{"q":3,"pp1":[1,2,3],"pp2":[]}"#).unwrap();
        assert_eq!(inst.spec(), SplitGraphSpec::new(1, 3).unwrap());
        assert_eq!(inst.t1.to_partial_permutation(), vec![1, 2, 3]);
        assert_eq!(inst.t2.handle(), &[VertexId::p(1)]);
    }

    #[test]
    fn rejections() {
        let cases = [
            r#"{"p":1,"q":1,"t1":{"handle":["p1"],"leaves":["q1"]},"t2":{"handle":["p1"],"leaves":["q1"]},"extra":1}"#,
            r#"{"p":1,"q":1,"t1":{"handle":["p1"],"leaves":["q1"],"x":0},"t2":{"handle":["p1"],"leaves":["q1"]}}"#,
            r#"{"q":3,"pp1":[1],"pp2":[2],"p":1}"#,
            r#"{"p":1,"q":1,"t1":{"handle":["z1"],"leaves":["q1"]},"t2":{"handle":["p1"],"leaves":["q1"]}}"#,
            r#"[1,2]"#,
            r#"{"p":0,"q":1,"t1":{"handle":[],"leaves":["q1"]},"t2":{"handle":[],"leaves":["q1"]}}"#,
            r#"{"p":1,"q":2,"t1":{"handle":["p1"],"leaves":["q1"]},"t2":{"handle":["p1"],"leaves":["q1","q2"]}}"#,
            r#"{"q":3,"pp1":[1,1],"pp2":[]}"#,
        ];
        for text in cases {
            assert!(Instance::from_json(text).is_err(), "accepted {text}");
        }
        let err = Instance::from_json(
            r#"{"p":1,"q":2,"t1":{"handle":["p1"],"leaves":["q1"]},"t2":{"handle":["p1"],"leaves":["q1","q2"]}}"#,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            InstanceError::Broom { which: "t1", source: BroomError::MissingVertex(_) }
        ));
    }
}
