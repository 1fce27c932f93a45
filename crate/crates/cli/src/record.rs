//! The JSON record emitted by `--json`. Field order is fixed by the struct
//! layout and absent fields are omitted, so parsing a record and writing
//! it back reproduces the same bytes.

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "maxsub/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema: String,
    pub command: String,
    pub query: Query,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_report: Option<SReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paths: Option<Paths>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl OutputRecord {
    pub fn new(command: &str, query: Query) -> Self {
        OutputRecord {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            query,
            status: "ok".to_string(),
            value: None,
            s_report: None,
            paths: None,
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SReport {
    pub a: i64,
    pub b: i64,
    pub s_min: i64,
    pub epsilon: i64,
    pub e_max: i64,
}

/// Values from each evaluation route, as decimal strings.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Paths {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direct: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recursive: Option<String>,
    /// The Grassmannian invariant N_{0,e}(P) the query reduces to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grassmannian: Option<String>,
}
