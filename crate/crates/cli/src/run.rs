//! Command execution: loads a scenario, drives the pipeline stages, and
//! assembles the certificate. Hard build errors become exit code 2 (no
//! certificate); failed mathematical checks become a "fail" verdict with
//! exit code 1.

use std::collections::BTreeMap;

use anyhow::Context;

use hopf_forge::constructions::{
    realize_cyclic_algebra, realize_tensor_product, stage_a, stage_form_iso, stage_galois,
    stage_h, stage_normal_form, stage_witness, stage_x, RealizeInput, StageReport,
};
use hopf_forge::hopf::VerifyOptions;
use hopf_forge::json::HopfJson;
use hopf_forge::report::Check;

use crate::certificate::Certificate;
use crate::scenario::{Depth, LoadedScenario, Pipeline, ScenarioFile};

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub depth: Option<Depth>,
    pub parallel: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            depth: None,
            parallel: true,
        }
    }
}

fn verify_options(scenario_depth: Option<Depth>, run: &RunOptions) -> VerifyOptions {
    let depth = run.depth.or(scenario_depth).unwrap_or(Depth::Exhaustive);
    VerifyOptions {
        parallel: run.parallel,
        exhaustive_pairs: depth == Depth::Exhaustive,
    }
}

fn realize_input(loaded: &LoadedScenario, options: VerifyOptions) -> RealizeInput {
    RealizeInput {
        ext: loaded.extension.clone(),
        alpha: loaded.cocycle.clone(),
        witness: loaded.witness.clone(),
        options,
    }
}

/// `construct`: build and verify the single object the scenario requests.
pub fn construct(text: &str, run: &RunOptions) -> anyhow::Result<Certificate> {
    let file = ScenarioFile::parse(text)?;
    let loaded = file.load()?;
    let options = verify_options(loaded.depth, run);
    match loaded.pipeline {
        Pipeline::A => {
            let (beta, _) = loaded.cocycle.normalize();
            let mut stages = Vec::new();
            let (rep, witness) = stage_witness(&beta, loaded.witness.as_ref())?;
            stages.push(rep);
            let (rep, a, a_layout) = stage_a(&beta, &witness, options)?;
            stages.push(rep);
            stages.push(stage_form_iso(&beta, &witness, &a, &a_layout));
            Ok(Certificate::new(&loaded.name, text.as_bytes(), stages)
                .with_object(HopfJson::from_hopf(&a)))
        }
        Pipeline::H => {
            let mut stages = Vec::new();
            let (rep, idem) = stage_galois(&loaded.extension)?;
            stages.push(rep);
            let (rep, h, _) = stage_h(&loaded.extension, &idem, options)?;
            stages.push(rep);
            Ok(Certificate::new(&loaded.name, text.as_bytes(), stages)
                .with_object(HopfJson::from_hopf(&h)))
        }
        Pipeline::X => {
            let mut stages = Vec::new();
            let (rep, idem) = stage_galois(&loaded.extension)?;
            stages.push(rep);
            let (rep, beta) = stage_normal_form(&loaded.extension, &loaded.cocycle)?;
            stages.push(rep);
            let (rep, witness) = stage_witness(&beta, loaded.witness.as_ref())?;
            stages.push(rep);
            let (rep, a, a_layout) = stage_a(&beta, &witness, options)?;
            stages.push(rep);
            let (rep, h, h_layout) = stage_h(&loaded.extension, &idem, options)?;
            stages.push(rep);
            let (rep, x, _) = stage_x(
                &loaded.extension,
                &beta,
                &witness,
                &h,
                &h_layout,
                &a,
                &a_layout,
                options,
            )?;
            stages.push(rep);
            Ok(Certificate::new(&loaded.name, text.as_bytes(), stages)
                .with_object(HopfJson::from_hopf(&x)))
        }
        Pipeline::Realize | Pipeline::Tensor => realize(text, run),
    }
}

/// `realize`: the full pipeline ending in the verified surjection onto the
/// crossed product (or the tensor of such, when factors are present).
pub fn realize(text: &str, run: &RunOptions) -> anyhow::Result<Certificate> {
    let file = ScenarioFile::parse(text)?;
    let loaded = file.load()?;
    let options = verify_options(loaded.depth, run);
    if loaded.pipeline == Pipeline::Tensor {
        let inputs: Vec<RealizeInput> = loaded
            .factors
            .iter()
            .map(|f| realize_input(f, verify_options(f.depth, run)))
            .collect();
        let outcome = realize_tensor_product(&inputs)?;
        return Ok(
            Certificate::new(&loaded.name, text.as_bytes(), outcome.stages.clone())
                .with_object(HopfJson::from_hopf(&outcome.x)),
        );
    }
    let outcome = realize_cyclic_algebra(&realize_input(&loaded, options))?;
    Ok(
        Certificate::new(&loaded.name, text.as_bytes(), outcome.stages.clone())
            .with_object(HopfJson::from_hopf(&outcome.x)),
    )
}

/// `cocycle-order`: class order and witness only, over the base field.
pub fn cocycle_order(text: &str, _run: &RunOptions) -> anyhow::Result<Certificate> {
    let file = ScenarioFile::parse(text)?;
    let loaded = file.load()?;
    let alpha = loaded
        .base_cocycle
        .as_ref()
        .context("cocycle-order needs a non-tensor scenario")?;
    let (beta, _) = alpha.normalize();
    let mut report = StageReport {
        stage: "cocycle_order".into(),
        checks: Vec::new(),
        dims: BTreeMap::new(),
        flags: BTreeMap::new(),
        notes: Vec::new(),
    };
    let witness = beta.class_order()?;
    report.dims.insert("class_order".into(), witness.order);
    report.checks.push(Check::pass("witness_verified"));
    for (g, f) in loaded.group.labels().iter().zip(&witness.cochain) {
        report.notes.push(format!("f({g}) = {f}"));
    }
    Ok(Certificate::new(&loaded.name, text.as_bytes(), vec![report]))
}

/// `verify`: re-check a serialized Hopf structure (a bare object or a
/// certificate containing one).
pub fn verify(text: &str, run: &RunOptions) -> anyhow::Result<Certificate> {
    let value: serde_json::Value =
        serde_json::from_str(text).context("object file is not valid JSON")?;
    let object_value = value.get("object").cloned().unwrap_or(value);
    let object: HopfJson = serde_json::from_value(object_value)
        .context("no serialized Hopf structure found in the file")?;
    let hopf = object.to_hopf()?;
    let options = verify_options(None, run);
    let cert = hopf.verify_all(options);
    let mut report = StageReport {
        stage: "verify".into(),
        checks: cert.checks.clone(),
        dims: BTreeMap::new(),
        flags: BTreeMap::new(),
        notes: Vec::new(),
    };
    report.dims.insert("dim".into(), cert.dim as u64);
    report
        .flags
        .insert("cocommutative".into(), cert.cocommutative);
    report.flags.insert("commutative".into(), cert.commutative);
    Ok(Certificate::new("verify", text.as_bytes(), vec![report]))
}
