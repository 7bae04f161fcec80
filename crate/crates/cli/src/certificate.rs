//! The certificate: a deterministic JSON record of every check a run
//! attempted, with dimensions, flags, and the serialized object when one
//! was constructed. Timing lives under its own key so byte comparisons can
//! exclude it.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use hopf_forge::constructions::StageReport;
use hopf_forge::json::HopfJson;
use hopf_forge::report::Status;

pub const SCHEMA: &str = "hopf-forge/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub tool_version: String,
    pub scenario: ScenarioMeta,
    pub verdict: String,
    pub stages: Vec<StageReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub object: Option<HopfJson>,
    pub timing: Timing,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioMeta {
    pub name: String,
    pub hash: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Timing {
    pub total_ms: u128,
}

impl Certificate {
    pub fn new(name: &str, input_bytes: &[u8], stages: Vec<StageReport>) -> Certificate {
        let verdict = if stages.iter().all(|s| s.all_pass()) {
            "pass"
        } else {
            "fail"
        };
        Certificate {
            schema: SCHEMA.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            scenario: ScenarioMeta {
                name: name.into(),
                hash: format!("sha256:{}", hex_digest(input_bytes)),
            },
            verdict: verdict.into(),
            stages,
            object: None,
            timing: Timing { total_ms: 0 },
        }
    }

    pub fn with_object(mut self, object: HopfJson) -> Certificate {
        self.object = Some(object);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    /// One line per stage plus one per non-passing check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for stage in &self.stages {
            let status = if stage.all_pass() { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "{:<28} {} ({} checks)\n",
                stage.stage,
                status,
                stage.checks.len()
            ));
            for check in &stage.checks {
                if check.status != Status::Pass {
                    let detail = check.detail.as_deref().unwrap_or("");
                    out.push_str(&format!(
                        "    {:<10} {} {}\n",
                        format!("{:?}", check.status).to_lowercase(),
                        check.name,
                        detail
                    ));
                }
            }
            for (key, value) in &stage.dims {
                out.push_str(&format!("    {key} = {value}\n"));
            }
            for note in &stage.notes {
                out.push_str(&format!("    note: {note}\n"));
            }
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }
}

pub fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
