use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extorus::{QSeries, SkewForm, TorusElem};
use crate::gca::{run_classical, ClassicalRun};
use crate::matrix::IVec;
use crate::poly::{render_monomial, Poly};
use crate::qcoeff::QCoeff;

use super::lrec::{gupta_product_quantum, l_recursion, QuantumPath, QuantumSeed};

/// A quantum F-polynomial: a finite sum of `c_α Z(α)` in the torus of `DB`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumFPoly {
    elem: TorusElem,
}

impl QuantumFPoly {
    pub fn new(elem: TorusElem) -> Self {
        Self { elem }
    }

    pub fn one(form: Arc<SkewForm>) -> Self {
        Self {
            elem: TorusElem::one(form),
        }
    }

    pub fn elem(&self) -> &TorusElem {
        &self.elem
    }

    pub fn n(&self) -> usize {
        self.elem.form().dim()
    }

    pub fn terms(&self) -> &BTreeMap<IVec, QCoeff> {
        self.elem.terms()
    }

    pub fn len(&self) -> usize {
        self.elem.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elem.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.terms().keys().map(|a| a.iter().sum()).max().unwrap_or(0)
    }

    /// Componentwise maximal exponent.
    pub fn max_exponent(&self) -> IVec {
        let mut m = vec![0; self.n()];
        for a in self.terms().keys() {
            for (x, y) in m.iter_mut().zip(a) {
                *x = (*x).max(*y);
            }
        }
        m
    }

    /// Polynomiality, constant term exactly 1, and a maximal monomial
    /// `q^{a/2} Z(f)` that every other monomial divides.
    pub fn structure_checks(&self) -> Result<StructureReport> {
        if let Some(a) = self.terms().keys().find(|a| a.iter().any(|&x| x < 0)) {
            return Err(Error::Falsified(format!("negative exponent {a:?} in {self}")));
        }
        let zero = vec![0; self.n()];
        if !self.elem.coeff(&zero).is_one() {
            return Err(Error::Falsified(format!("constant term is not 1 in {self}")));
        }
        let f = self.max_exponent();
        let c = self.elem.coeff(&f);
        let half = match c.terms() {
            [(m, v)] if m.param == 0 && *v == BigInt::from(1) => m.half,
            _ => {
                return Err(Error::Falsified(format!(
                    "maximal monomial Z{f:?} has coefficient `{c}`, not a power of q^(1/2)"
                )))
            }
        };
        Ok(StructureReport {
            max_exponent: f,
            max_half: half,
            terms: self.len(),
            nonnegative: self.has_nonnegative_coefficients(),
        })
    }

    /// All coefficients nonnegative with the parameter as a variable.
    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms()
            .values()
            .all(|c| c.terms().iter().all(|(_, v)| v.sign() != num_bigint::Sign::Minus))
    }

    /// Value at `q^{1/2} = 1`, as a polynomial in `Z_1..Z_n` and the free
    /// parameter (last variable).
    pub fn at_q_one(&self) -> Poly {
        let n = self.n();
        let mut out = Poly::zero(n + 1);
        for (a, c) in self.terms() {
            for (deg, v) in c.at_q_one().into_iter().enumerate() {
                let mut e = a.clone();
                e.push(deg as i64);
                out.add_term(e, v);
            }
        }
        out
    }
}

impl fmt::Display for QuantumFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let names: Vec<String> = (1..=n).map(|i| format!("Z{i}")).collect();
        let mut keys: Vec<&IVec> = self.terms().keys().collect();
        keys.sort_by(|a, b| {
            let da: i64 = a.iter().sum();
            let db: i64 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        if keys.is_empty() {
            return f.write_str("0");
        }
        for (i, a) in keys.into_iter().enumerate() {
            let body = render_monomial(a, &names);
            let (neg, s) = self.terms()[a].render_prefix(&body);
            match (i, neg) {
                (0, false) => write!(f, "{s}")?,
                (0, true) => write!(f, "-{s}")?,
                (_, false) => write!(f, " + {s}")?,
                (_, true) => write!(f, " - {s}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub max_exponent: IVec,
    /// Exponent of `q^{1/2}` on the maximal monomial.
    pub max_half: i32,
    pub terms: usize,
    /// Observation only: every coefficient is nonnegative in `q^{1/2}`
    /// and the parameter.
    pub nonnegative: bool,
}

/// Truncation protocol for the stabilization certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtractOptions {
    /// Fixed truncation; otherwise `classical degree + slack` over the path.
    pub truncation: Option<u32>,
    pub slack: u32,
    pub delta: u32,
    pub margin: u32,
    /// Accept `h` with `h_{i,s}(1) <= 0`.
    pub experimental: bool,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        Self {
            truncation: None,
            slack: 1,
            delta: 2,
            margin: 1,
            experimental: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub truncation: u32,
    pub delta: u32,
    pub margin: u32,
    /// Total `y`-degree of the classical F-polynomial at the same vertex.
    pub classical_degree: i64,
    pub top_degree: i64,
}

#[derive(Clone, Debug)]
pub enum Extraction {
    Certified { f: QuantumFPoly, certificate: Certificate },
    Inconclusive { reason: String, truncation: u32 },
}

impl Extraction {
    pub fn certified(&self) -> Option<&QuantumFPoly> {
        match self {
            Extraction::Certified { f, .. } => Some(f),
            Extraction::Inconclusive { .. } => None,
        }
    }

    pub fn into_result(self) -> Result<(QuantumFPoly, Certificate)> {
        match self {
            Extraction::Certified { f, certificate } => Ok((f, certificate)),
            Extraction::Inconclusive { reason, truncation } => Err(Error::Unbounded(format!(
                "no stabilization at truncation {truncation}: {reason}"
            ))),
        }
    }
}

/// Everything computed for one quantum path.
#[derive(Clone, Debug)]
pub struct QuantumRun {
    pub path: QuantumPath,
    pub classical: ClassicalRun,
    /// `F_{i_j;t_j}` for `j = 1..k`.
    pub extractions: Vec<Extraction>,
}

/// Extracts `F_{i_j;t_j}` for every step of `path`, with one truncation
/// level for the whole path and a second run at `N + Δ` as certificate.
pub fn extract_fpolys(seed: &QuantumSeed, path: &[usize], opts: ExtractOptions) -> Result<QuantumRun> {
    if !opts.experimental && !seed.data().h_positive_at_one() {
        return Err(Error::MutationData(
            "some h_{i,s}(1) <= 0; pass the experimental flag to proceed".into(),
        ));
    }
    let qp = QuantumPath::new(seed, path)?;
    let classical = run_classical(&seed.classical_shadow()?, path)?;
    let n = seed.n();
    let degs: Vec<i64> = path
        .iter()
        .enumerate()
        .map(|(j, &k)| Ok(classical.f_poly(j + 1, k)?.poly().max_degree_in(&(0..n).collect::<Vec<_>>())))
        .collect::<Result<_>>()?;
    let max_deg = degs.iter().copied().max().unwrap_or(0);
    let big_n = opts
        .truncation
        .unwrap_or((max_deg.max(0) as u32) + opts.slack);
    let hi = big_n + opts.delta;
    let (low, high) = rayon::join(
        || -> Result<Vec<QSeries>> {
            let l = l_recursion(seed, &qp, big_n)?;
            (1..=path.len()).map(|k| gupta_product_quantum(seed, &qp, &l, k)).collect()
        },
        || -> Result<Vec<QSeries>> {
            let l = l_recursion(seed, &qp, hi)?;
            (1..=path.len()).map(|k| gupta_product_quantum(seed, &qp, &l, k)).collect()
        },
    );
    let (low, high) = (low?, high?);
    let extractions = low
        .into_iter()
        .zip(high)
        .zip(degs)
        .map(|((lo, hi_s), cd)| certify(lo, hi_s, cd, big_n, opts))
        .collect();
    Ok(QuantumRun {
        path: qp,
        classical,
        extractions,
    })
}

fn certify(lo: QSeries, hi: QSeries, classical_degree: i64, n: u32, opts: ExtractOptions) -> Extraction {
    if lo != hi.truncate(n) {
        return Extraction::Inconclusive {
            reason: "series at N and N + delta disagree below N".into(),
            truncation: n,
        };
    }
    let top = hi.top_degree().unwrap_or(0);
    if top > n as i64 - opts.margin as i64 {
        return Extraction::Inconclusive {
            reason: format!("top degree {top} exceeds N - margin"),
            truncation: n,
        };
    }
    Extraction::Certified {
        f: QuantumFPoly::new(hi.truncate(n).into_elem()),
        certificate: Certificate {
            truncation: n,
            delta: opts.delta,
            margin: opts.margin,
            classical_degree,
            top_degree: top,
        },
    }
}

/// Compares `F` at `q^{1/2} = 1` with the classical F-polynomial under
/// `z_{i,s} := h_{i,s}(1)`.
pub fn specialize_q1(f: &QuantumFPoly, classical: &crate::gca::ClassicalFPoly, values: &BTreeMap<String, Vec<BigInt>>) -> Result<()> {
    let q = f.at_q_one();
    let c = classical.specialize(values)?;
    if q != c {
        return Err(Error::Falsified(format!(
            "q = 1 specialization differs: quantum {q} vs classical {c}"
        )));
    }
    Ok(())
}
