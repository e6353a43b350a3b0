use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gca::{gupta_expansion, gupta_product, run_classical};
use crate::gqca::{extract_fpolys, Certificate, ExtractOptions};
use crate::matrix::column;
use crate::patterns::{run_path, VertexDump};
use crate::seedcore::{mutate_pair, CompatiblePair};

use super::fixtures::fixture;
use super::random::{random_instances, Instance, RandomOptions};
use super::seedfile::{parse_path, render_path, Seed, SeedFile};
use super::verify::{instance_label, verify_instance, Check, VerifyReport};

#[derive(Clone, Debug, Serialize)]
pub struct MutateDump {
    pub path: String,
    pub vertices: Vec<VertexDump>,
}

/// Per-vertex `B~`, `Λ` (when present), `C`, `G`, `G~` and signs.
pub fn cmd_mutate(file: &SeedFile, path: &str) -> Result<MutateDump> {
    let seed = file.load()?;
    let path = parse_path(path, seed.n())?;
    let r = seed.data().r_i64();
    let states = run_path(seed.btilde(), &r, &path)?;
    let mut lambdas = Vec::with_capacity(states.len());
    if let Some(l) = seed.lambda() {
        let mut pair = CompatiblePair::new(seed.btilde().clone(), l.clone())?;
        lambdas.push(Some(pair.lambda().clone()));
        for (j, &k) in path.iter().enumerate() {
            pair = mutate_pair(&pair, &r, k, states[j].signs[k])?;
            lambdas.push(Some(pair.lambda().clone()));
        }
    } else {
        lambdas.resize(states.len(), None);
    }
    Ok(MutateDump {
        path: render_path(&path),
        vertices: states
            .iter()
            .zip(&lambdas)
            .map(|(s, l)| s.dump(l.as_ref()))
            .collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FpolyMode {
    Direct,
    Gupta,
    Expansion,
    Quantum,
}

#[derive(Clone, Debug, Serialize)]
pub struct FpolyOutput {
    pub mode: FpolyMode,
    pub path: String,
    pub index: usize,
    /// Extended g-vector of the cluster variable.
    pub g: Vec<i64>,
    #[serde(rename = "F")]
    pub f: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

/// `F_{index;t}` at the end of `path` (`index` is 1-based).
pub fn cmd_fpoly(file: &SeedFile, path: &str, index: usize, mode: FpolyMode, opts: ExtractOptions) -> Result<FpolyOutput> {
    let seed = file.load()?;
    let n = seed.n();
    let path = parse_path(path, n)?;
    if index == 0 || index > n {
        return Err(Error::Input(format!("index {index} outside [1, {n}]")));
    }
    let i = index - 1;
    let states = run_path(seed.btilde(), &seed.data().r_i64(), &path)?;
    let g = column(&states.last().expect("initial state").gtilde, i);
    // F_{i;t} only changes when direction i is mutated.
    let last = path.iter().rposition(|&k| k == i);
    let prefix = last.map_or(&path[..0], |j| &path[..=j]);
    let (f, certificate) = match mode {
        FpolyMode::Direct => {
            let cs = seed.classical()?;
            (run_classical(&cs, &path)?.f_poly(path.len(), i)?.to_string(), None)
        }
        FpolyMode::Gupta | FpolyMode::Expansion if prefix.is_empty() => ("1".to_string(), None),
        FpolyMode::Gupta => (gupta_product(&seed.classical()?, prefix)?.to_string(), None),
        FpolyMode::Expansion => (gupta_expansion(&seed.classical()?, prefix)?.to_string(), None),
        FpolyMode::Quantum => {
            let q = seed
                .quantum()
                .ok_or_else(|| Error::Input("--quantum needs a quantum seed file".into()))?;
            if prefix.is_empty() {
                ("1".to_string(), None)
            } else {
                let run = extract_fpolys(q, prefix, opts)?;
                let (f, cert) = run.extractions.last().cloned().expect("nonempty").into_result()?;
                (f.to_string(), Some(cert))
            }
        }
    };
    Ok(FpolyOutput {
        mode,
        path: render_path(&path),
        index,
        g,
        f,
        certificate,
    })
}

/// What `verify` runs on.
#[derive(Clone, Debug)]
pub enum VerifySource {
    File { file: SeedFile, path: String },
    Random { seed: u64, trials: usize, options: RandomOptions },
}

pub fn cmd_verify(source: &VerifySource, checks: &[Check], opts: ExtractOptions) -> Result<VerifyReport> {
    let start = Instant::now();
    let instances: Vec<Instance> = match source {
        VerifySource::File { file, path } => {
            let seed: Seed = file.load()?;
            let path = parse_path(path, seed.n())?;
            vec![Instance {
                label: instance_label("seed file", &path),
                seed,
                path,
            }]
        }
        VerifySource::Random { seed, trials, options } => random_instances(*seed, *trials, options),
    };
    let results = instances
        .par_iter()
        .map(|inst| verify_instance(inst, checks, opts))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(VerifyReport::new(
        results,
        instances.len(),
        start.elapsed().as_secs_f64() * 1e3,
    ))
}

/// The bundled fixture as seed-file JSON.
pub fn cmd_example(name: &str) -> Result<String> {
    Ok(fixture(name)?.to_json())
}

/// Process exit status for an error: 1 falsification, 2 inconclusive,
/// 3 input error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Falsified(_) | Error::SignCoherence(_) | Error::Integrality(_) | Error::Internal(_) => 1,
        Error::Unbounded(_) => 2,
        _ => 3,
    }
}
