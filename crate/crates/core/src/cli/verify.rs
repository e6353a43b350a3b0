use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gca::{gupta_expansion, gupta_product, run_classical, separation_check_classical, ClassicalRun};
use crate::gqca::{extract_fpolys, separation_check_quantum, specialize_q1, ExtractOptions, Extraction, QuantumRun};
use crate::matrix::{principal_part, to_rows, IMat};
use crate::patterns::{d0_of, run_path, verify_d_form_duality, verify_gb_bc, verify_inner_duality, verify_tropical_duality, PatternState};

use super::random::Instance;
use super::seedfile::render_path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Skipped,
    Inconclusive,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Duality,
    Gbbc,
    Separation,
    Q1,
    Structure,
    Triple,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Duality,
        Check::Gbbc,
        Check::Separation,
        Check::Q1,
        Check::Structure,
        Check::Triple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Duality => "duality",
            Check::Gbbc => "gbbc",
            Check::Separation => "separation",
            Check::Q1 => "q1",
            Check::Structure => "structure",
            Check::Triple => "triple",
        }
    }

    /// Parses `duality|gbbc|separation|q1|structure|triple|all`.
    pub fn parse_list(text: &str) -> Result<Vec<Check>> {
        if text.trim() == "all" {
            return Ok(Check::ALL.to_vec());
        }
        text.split(',').map(str::parse).collect()
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Input(format!("unknown check `{s}`")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub instance: String,
    pub check: Check,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub millis: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub status: Status,
    pub instances: usize,
    pub checks: Vec<CheckResult>,
    pub millis: f64,
}

impl VerifyReport {
    pub fn new(checks: Vec<CheckResult>, instances: usize, millis: f64) -> Self {
        let status = checks
            .iter()
            .map(|c| c.status)
            .filter(|s| *s != Status::Skipped)
            .max()
            .unwrap_or(Status::Pass);
        Self {
            status,
            instances,
            checks,
            millis,
        }
    }

    /// 0 pass, 1 falsification, 2 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass | Status::Skipped => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

enum Outcome {
    Pass,
    Skip(String),
    Inconclusive(String),
    Fail(String),
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        match e {
            Error::Unbounded(m) => Outcome::Inconclusive(m),
            e => Outcome::Fail(e.to_string()),
        }
    }
}

fn show(m: &IMat) -> String {
    format!("{:?}", to_rows(m))
}

/// Lazily computed data shared by the checks of one instance.
struct Ctx<'a> {
    inst: &'a Instance,
    opts: ExtractOptions,
    states: Option<std::result::Result<Vec<PatternState>, String>>,
    classical: Option<std::result::Result<ClassicalRun, String>>,
    quantum: Option<std::result::Result<QuantumRun, String>>,
}

impl<'a> Ctx<'a> {
    fn states(&mut self) -> std::result::Result<&Vec<PatternState>, Outcome> {
        let inst = self.inst;
        self.states
            .get_or_insert_with(|| {
                run_path(inst.seed.btilde(), &inst.seed.data().r_i64(), &inst.path).map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(|e| Outcome::Fail(e.clone()))
    }

    fn classical(&mut self) -> std::result::Result<&ClassicalRun, Outcome> {
        let inst = self.inst;
        self.classical
            .get_or_insert_with(|| {
                inst.seed
                    .classical()
                    .and_then(|s| run_classical(&s, &inst.path))
                    .map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(|e| Outcome::Fail(e.clone()))
    }

    fn quantum(&mut self) -> std::result::Result<Option<&QuantumRun>, Outcome> {
        let Some(q) = self.inst.seed.quantum() else {
            return Ok(None);
        };
        let (path, opts) = (&self.inst.path, self.opts);
        self.quantum
            .get_or_insert_with(|| extract_fpolys(q, path, opts).map_err(|e| e.to_string()))
            .as_ref()
            .map(Some)
            .map_err(|e| Outcome::Fail(e.clone()))
    }
}

fn certified(run: &QuantumRun) -> std::result::Result<Vec<crate::gqca::QuantumFPoly>, Outcome> {
    run.extractions
        .iter()
        .enumerate()
        .map(|(j, e)| match e {
            Extraction::Certified { f, .. } => Ok(f.clone()),
            Extraction::Inconclusive { reason, truncation } => Err(Outcome::Inconclusive(format!(
                "step {}: no stabilization at truncation {truncation}: {reason}",
                j + 1
            ))),
        })
        .collect()
}

fn duality(ctx: &mut Ctx) -> std::result::Result<Outcome, Outcome> {
    let seed = ctx.inst.seed.clone();
    let r = seed.data().r_i64();
    let b0 = principal_part(seed.btilde());
    let d0 = d0_of(&b0, &r)?;
    let d = seed.quantum().map(|q| q.pair().d().to_vec());
    for st in ctx.states()? {
        let t = st.t_index;
        if !verify_tropical_duality(&st.g, &st.c, &d0, &r) {
            return Ok(Outcome::Fail(format!(
                "t{t}: G^T (D0 R) C != D0 R with G = {}, C = {}, D0 = {d0:?}, R = {r:?}",
                show(&st.g),
                show(&st.c)
            )));
        }
        if !verify_inner_duality(&st.g, &st.c, &d0, &r) {
            return Ok(Outcome::Fail(format!(
                "t{t}: inner-product duality fails with G = {}, C = {}",
                show(&st.g),
                show(&st.c)
            )));
        }
        if let Some(d) = &d {
            if !verify_d_form_duality(&st.c, &st.gtilde, d) {
                return Ok(Outcome::Fail(format!(
                    "t{t}: c_i^T [D 0] g~_j != d_i delta_ij with C = {}, G~ = {}, D = {d:?}",
                    show(&st.c),
                    show(&st.gtilde)
                )));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn gbbc(ctx: &mut Ctx) -> std::result::Result<Outcome, Outcome> {
    let bt0 = ctx.inst.seed.btilde().clone();
    let b0 = principal_part(&bt0);
    for st in ctx.states()? {
        let b = principal_part(&st.bt);
        if !verify_gb_bc(&st.g, &b, &b0, &st.c) {
            return Ok(Outcome::Fail(format!(
                "t{}: G B_t = {} but B_0 C = {}",
                st.t_index,
                show(&(&st.g * &b)),
                show(&(&b0 * &st.c))
            )));
        }
        if !verify_gb_bc(&st.gtilde, &st.bt, &bt0, &st.c) {
            return Ok(Outcome::Fail(format!(
                "t{}: G~ B~_t = {} but B~_0 C = {}",
                st.t_index,
                show(&(&st.gtilde * &st.bt)),
                show(&(&bt0 * &st.c))
            )));
        }
    }
    Ok(Outcome::Pass)
}

fn separation(ctx: &mut Ctx) -> std::result::Result<Outcome, Outcome> {
    let inst = ctx.inst;
    separation_check_classical(ctx.classical()?)?;
    if let Some(run) = ctx.quantum()? {
        let fs = certified(run)?;
        let q = inst.seed.quantum().expect("quantum run implies quantum seed");
        separation_check_quantum(q, &run.path, &fs)?;
    }
    Ok(Outcome::Pass)
}

fn q1(ctx: &mut Ctx) -> std::result::Result<Outcome, Outcome> {
    let Some(q) = ctx.inst.seed.quantum() else {
        return Ok(Outcome::Skip("classical seed".into()));
    };
    let values = q.data().symbol_values_at_q_one()?;
    let path = ctx.inst.path.clone();
    let run = ctx.quantum()?.expect("quantum seed");
    for (j, f) in certified(run)?.iter().enumerate() {
        let c = run.classical.f_poly(j + 1, path[j])?;
        if let Err(e) = specialize_q1(f, &c, &values) {
            return Ok(Outcome::Fail(format!("step {}: {e}", j + 1)));
        }
    }
    Ok(Outcome::Pass)
}

fn structure(ctx: &mut Ctx) -> std::result::Result<Outcome, Outcome> {
    let path = ctx.inst.path.clone();
    let positive = ctx.inst.seed.quantum().is_none_or(|q| q.data().h_positive_at_one());
    {
        let run = ctx.classical()?;
        for (j, &k) in path.iter().enumerate() {
            let f = run.f_poly(j + 1, k)?;
            if let Err(e) = f.structure_check() {
                return Ok(Outcome::Fail(format!("classical F at step {}: {e}", j + 1)));
            }
        }
    }
    if let Some(run) = ctx.quantum()? {
        for (j, f) in certified(run)?.iter().enumerate() {
            if let Err(e) = f.structure_checks() {
                return Ok(if positive {
                    Outcome::Fail(format!("quantum F at step {}: {e}", j + 1))
                } else {
                    Outcome::Inconclusive(format!("quantum F at step {} (h(1) not positive): {e}", j + 1))
                });
            }
        }
    }
    Ok(Outcome::Pass)
}

fn triple(ctx: &mut Ctx) -> std::result::Result<Outcome, Outcome> {
    let seed = ctx.inst.seed.classical()?;
    let path = ctx.inst.path.clone();
    let run = ctx.classical()?;
    for k in 1..=path.len() {
        let direct = run.f_poly(k, path[k - 1])?;
        let prod = gupta_product(&seed, &path[..k])?;
        if prod != direct {
            return Ok(Outcome::Fail(format!(
                "step {k}: direct {direct} vs product {prod}"
            )));
        }
        let exp = gupta_expansion(&seed, &path[..k])?;
        if exp != direct {
            return Ok(Outcome::Fail(format!(
                "step {k}: direct {direct} vs expansion {exp}"
            )));
        }
    }
    Ok(Outcome::Pass)
}

/// Runs `checks` on one instance.
pub fn verify_instance(inst: &Instance, checks: &[Check], opts: ExtractOptions) -> Vec<CheckResult> {
    let mut ctx = Ctx {
        inst,
        opts,
        states: None,
        classical: None,
        quantum: None,
    };
    checks
        .iter()
        .map(|&check| {
            let start = Instant::now();
            let out = match check {
                Check::Duality => duality(&mut ctx),
                Check::Gbbc => gbbc(&mut ctx),
                Check::Separation => separation(&mut ctx),
                Check::Q1 => q1(&mut ctx),
                Check::Structure => structure(&mut ctx),
                Check::Triple => triple(&mut ctx),
            }
            .unwrap_or_else(|o| o);
            let (status, counterexample, note) = match out {
                Outcome::Pass => (Status::Pass, None, None),
                Outcome::Skip(n) => (Status::Skipped, None, Some(n)),
                Outcome::Inconclusive(n) => (Status::Inconclusive, None, Some(n)),
                Outcome::Fail(c) => (Status::Fail, Some(c), None),
            };
            CheckResult {
                instance: inst.label.clone(),
                check,
                status,
                counterexample,
                note,
                millis: start.elapsed().as_secs_f64() * 1e3,
            }
        })
        .collect()
}

pub fn instance_label(name: &str, path: &[usize]) -> String {
    format!("{name} (path {})", render_path(path))
}
