//! Scenario files: the JSON input format tying together a field, a group, a
//! cocycle, an optional extension and witness, and the requested pipeline.

use std::sync::Arc;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use hopf_forge::cocycle::TwoCocycle;
use hopf_forge::field::{Field, FieldElement};
use hopf_forge::galois::GaloisExtension;
use hopf_forge::group::FiniteGroup;
use hopf_forge::json::{CocycleJson, ExtensionJson, FieldJson, GroupJson};

pub const SCHEMA: &str = "hopf-forge/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    A,
    H,
    X,
    Realize,
    Tensor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    Exhaustive,
    Sampled,
}

/// The raw scenario file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub schema: String,
    pub name: String,
    pub pipeline: Pipeline,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<Depth>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<ScenarioFile>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessJson {
    pub m: u64,
    /// group element label -> value string over the base field.
    pub f: BTreeMap<String, String>,
}

/// A scenario resolved into core types.
pub struct LoadedScenario {
    pub name: String,
    pub pipeline: Pipeline,
    pub depth: Option<Depth>,
    pub base: Field,
    pub group: Arc<FiniteGroup>,
    pub extension: GaloisExtension,
    /// Parsed over L for realize/X/tensor pipelines, over k otherwise.
    pub cocycle: TwoCocycle,
    /// The same cocycle parsed over the base field (for cocycle-order).
    pub base_cocycle: Option<TwoCocycle>,
    pub witness: Option<(u64, Vec<FieldElement>)>,
    pub factors: Vec<LoadedScenario>,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> anyhow::Result<ScenarioFile> {
        let file: ScenarioFile =
            serde_json::from_str(text).context("scenario file is not valid JSON for the schema")?;
        if file.schema != SCHEMA {
            bail!("unsupported schema `{}` (expected `{SCHEMA}`)", file.schema);
        }
        Ok(file)
    }

    pub fn load(&self) -> anyhow::Result<LoadedScenario> {
        if self.pipeline == Pipeline::Tensor {
            let factor_files = self
                .factors
                .as_ref()
                .filter(|f| !f.is_empty())
                .context("tensor scenarios need a non-empty `factors` array")?;
            let factors = factor_files
                .iter()
                .map(|f| f.load())
                .collect::<anyhow::Result<Vec<_>>>()?;
            let first = &factors[0];
            return Ok(LoadedScenario {
                name: self.name.clone(),
                pipeline: Pipeline::Tensor,
                depth: self.depth,
                base: first.base.clone(),
                group: first.group.clone(),
                extension: first.extension.clone(),
                cocycle: first.cocycle.clone(),
                base_cocycle: None,
                witness: None,
                factors,
            });
        }

        let base = self
            .field
            .as_ref()
            .context("scenario needs a `field` object")?
            .to_field()?;
        let group = Arc::new(
            self.group
                .as_ref()
                .context("scenario needs a `group` object")?
                .to_group()?,
        );
        let extension = match &self.extension {
            Some(ext) => ext.to_extension(&base, group.clone())?,
            None => {
                if matches!(self.pipeline, Pipeline::H | Pipeline::X | Pipeline::Realize)
                    && group.order() > 1
                {
                    bail!("pipeline `{:?}` needs an `extension` object for a nontrivial group",
                          self.pipeline);
                }
                GaloisExtension::trivial(&base)
            }
        };
        // realize/X/tensor read the cocycle over L; A and cocycle-order
        // read it over k.
        let cocycle_field = match self.pipeline {
            Pipeline::Realize | Pipeline::X => extension.field().clone(),
            _ => base.clone(),
        };
        let cocycle = match &self.cocycle {
            Some(c) => c.to_cocycle(group.clone(), &cocycle_field)?,
            None => TwoCocycle::trivial(group.clone(), &cocycle_field),
        };
        let base_cocycle = match &self.cocycle {
            Some(c) => Some(c.to_cocycle(group.clone(), &base)?),
            None => Some(TwoCocycle::trivial(group.clone(), &base)),
        };
        let witness = match &self.witness {
            None => None,
            Some(w) => {
                let f = group
                    .labels()
                    .iter()
                    .map(|label| {
                        let s = w
                            .f
                            .get(label)
                            .with_context(|| format!("witness has no value for `{label}`"))?;
                        Ok(base.parse_element(s)?)
                    })
                    .collect::<anyhow::Result<Vec<_>>>()?;
                Some((w.m, f))
            }
        };
        Ok(LoadedScenario {
            name: self.name.clone(),
            pipeline: self.pipeline,
            depth: self.depth,
            base,
            group,
            extension,
            cocycle,
            base_cocycle,
            witness,
            factors: Vec::new(),
        })
    }
}
