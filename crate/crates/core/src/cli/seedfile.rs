use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gca::ClassicalSeed;
use crate::gqca::QuantumSeed;
use crate::matrix::{from_rows, principal_part, to_rows, IMat};
use crate::qcoeff::QCoeff;
use crate::seedcore::{CompatiblePair, MutationData, ZEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classical,
    Quantum,
}

/// `R` is accepted either as the list `r_1..r_n` or as a diagonal matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RField {
    List(Vec<u32>),
    Matrix(Vec<Vec<u32>>),
}

impl RField {
    fn diagonal(&self) -> Result<Vec<u32>> {
        match self {
            RField::List(v) => Ok(v.clone()),
            RField::Matrix(rows) => {
                let n = rows.len();
                let mut out = Vec::with_capacity(n);
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != n || row.iter().enumerate().any(|(j, &x)| j != i && x != 0) {
                        return Err(Error::Input("R must be a diagonal matrix or a list".into()));
                    }
                    out.push(row[i]);
                }
                Ok(out)
            }
        }
    }
}

/// A `z` entry: an integer, a formal name, or an integer written as a string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ZValue {
    Int(i64),
    Text(String),
}

impl ZValue {
    fn entry(&self) -> Result<ZEntry> {
        match self {
            ZValue::Int(v) => Ok(ZEntry::Int(BigInt::from(*v))),
            ZValue::Text(s) => {
                let s = s.trim();
                if let Ok(r) = s.parse::<BigRational>() {
                    if !r.is_integer() {
                        return Err(Error::Input(format!("z value {s} is not an integer")));
                    }
                    return Ok(ZEntry::Int(r.to_integer()));
                }
                let ok = s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                    && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                if !ok {
                    return Err(Error::Input(format!("`{s}` is neither an integer nor a symbol name")));
                }
                Ok(ZEntry::Symbol(s.to_string()))
            }
        }
    }

    fn from_entry(e: &ZEntry) -> Self {
        match e {
            ZEntry::Int(v) => i64::try_from(v).map_or_else(|_| ZValue::Text(v.to_string()), ZValue::Int),
            ZEntry::Symbol(s) => ZValue::Text(s.clone()),
        }
    }
}

/// On-disk seed description (UTF-8 JSON, 1-based directions).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedFile {
    pub mode: Mode,
    pub n: usize,
    pub m: usize,
    #[serde(rename = "Btilde")]
    pub btilde: Vec<Vec<i64>>,
    #[serde(rename = "Lambda", default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<Vec<i64>>>,
    #[serde(rename = "R")]
    pub r: RField,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<Vec<ZValue>>>,
}

/// A validated seed.
#[derive(Clone, Debug)]
pub enum Seed {
    Classical {
        btilde: IMat,
        lambda: Option<IMat>,
        seed: ClassicalSeed,
    },
    Quantum(QuantumSeed),
}

impl Seed {
    pub fn n(&self) -> usize {
        match self {
            Seed::Classical { seed, .. } => seed.n(),
            Seed::Quantum(q) => q.n(),
        }
    }

    pub fn btilde(&self) -> &IMat {
        match self {
            Seed::Classical { btilde, .. } => btilde,
            Seed::Quantum(q) => q.pair().btilde(),
        }
    }

    pub fn lambda(&self) -> Option<&IMat> {
        match self {
            Seed::Classical { lambda, .. } => lambda.as_ref(),
            Seed::Quantum(q) => Some(q.pair().lambda()),
        }
    }

    pub fn data(&self) -> &MutationData {
        match self {
            Seed::Classical { seed, .. } => seed.data(),
            Seed::Quantum(q) => q.data(),
        }
    }

    /// The classical seed (the shadow with formal symbols in quantum mode).
    pub fn classical(&self) -> Result<ClassicalSeed> {
        match self {
            Seed::Classical { seed, .. } => Ok(seed.clone()),
            Seed::Quantum(q) => q.classical_shadow(),
        }
    }

    pub fn quantum(&self) -> Option<&QuantumSeed> {
        match self {
            Seed::Classical { .. } => None,
            Seed::Quantum(q) => Some(q),
        }
    }

    pub fn to_file(&self) -> SeedFile {
        let bt = self.btilde();
        let data = self.data();
        let (mode, h, z) = match self {
            Seed::Classical { .. } => (
                Mode::Classical,
                None,
                Some(
                    data.z()
                        .iter()
                        .map(|zk| zk.iter().map(ZValue::from_entry).collect())
                        .collect(),
                ),
            ),
            Seed::Quantum(_) => (
                Mode::Quantum,
                data.h()
                    .map(|h| h.iter().map(|hk| hk.iter().map(QCoeff::to_string).collect()).collect()),
                None,
            ),
        };
        SeedFile {
            mode,
            n: bt.ncols(),
            m: bt.nrows(),
            btilde: to_rows(bt),
            lambda: self.lambda().map(to_rows),
            r: RField::List(data.r().to_vec()),
            h,
            z,
        }
    }
}

fn matrix(rows: &[Vec<i64>], nr: usize, nc: usize, what: &str) -> Result<IMat> {
    if rows.len() != nr || rows.iter().any(|r| r.len() != nc) {
        return Err(Error::Input(format!("{what} must be {nr} x {nc}")));
    }
    from_rows(rows)
}

fn field<T>(r: Result<T>, what: &str) -> Result<T> {
    r.map_err(|e| Error::Input(format!("{what}: {e}")))
}

impl SeedFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("seed file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("seed file serializes")
    }

    /// Validates dimensions, compatibility and mutation data.
    pub fn load(&self) -> Result<Seed> {
        let (n, m) = (self.n, self.m);
        if n == 0 || m < n {
            return Err(Error::Input(format!("need m >= n >= 1, got n = {n}, m = {m}")));
        }
        let btilde = matrix(&self.btilde, m, n, "Btilde")?;
        let lambda = self
            .lambda
            .as_ref()
            .map(|l| matrix(l, m, m, "Lambda"))
            .transpose()?;
        let r = self.r.diagonal()?;
        if r.len() != n {
            return Err(Error::Input(format!("R must have {n} entries")));
        }
        match self.mode {
            Mode::Classical => {
                if self.h.is_some() {
                    return Err(Error::Input("h is only used in quantum mode".into()));
                }
                let data = match &self.z {
                    None => field(MutationData::formal(r), "R")?,
                    Some(z) => {
                        let z = z
                            .iter()
                            .map(|zk| zk.iter().map(ZValue::entry).collect::<Result<Vec<_>>>())
                            .collect::<Result<Vec<_>>>()?;
                        field(MutationData::classical(r, z), "z")?
                    }
                };
                if let Some(l) = &lambda {
                    field(CompatiblePair::new(btilde.clone(), l.clone()), "Lambda")?;
                }
                let seed = field(ClassicalSeed::new(principal_part(&btilde), data), "Btilde")?;
                Ok(Seed::Classical { btilde, lambda, seed })
            }
            Mode::Quantum => {
                if self.z.is_some() {
                    return Err(Error::Input("z is derived from h in quantum mode".into()));
                }
                let lambda = lambda.ok_or_else(|| Error::Input("quantum mode needs Lambda".into()))?;
                let h = self
                    .h
                    .as_ref()
                    .ok_or_else(|| Error::Input("quantum mode needs h".into()))?;
                let h = h
                    .iter()
                    .enumerate()
                    .map(|(k, hk)| {
                        hk.iter()
                            .map(|s| field(s.parse::<QCoeff>(), &format!("h[{}]", k + 1)))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let data = field(MutationData::quantum(r, h), "h")?;
                let pair = field(CompatiblePair::new(btilde, lambda), "Lambda")?;
                Ok(Seed::Quantum(field(QuantumSeed::new(pair, data), "seed")?))
            }
        }
    }
}

/// Parses `"1,2,1"` (1-based, empty allowed) into 0-based directions.
pub fn parse_path(text: &str, n: usize) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|p| {
            let k: usize = p
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("bad path entry `{}`", p.trim())))?;
            if k == 0 || k > n {
                return Err(Error::Input(format!("path entry {k} outside [1, {n}]")));
            }
            Ok(k - 1)
        })
        .collect()
}

pub fn render_path(path: &[usize]) -> String {
    path.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(",")
}
