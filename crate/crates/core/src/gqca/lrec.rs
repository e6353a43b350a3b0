use std::sync::Arc;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::extorus::{QSeries, SkewForm};
use crate::gca::ClassicalSeed;
use crate::matrix::{column, IVec};
use crate::patterns::{path_steps, run_path, PathStep, PatternState};
use crate::qcoeff::QCoeff;
use crate::seedcore::{mutate_pair, CompatiblePair, MutationData};

use super::bracket::BracketBase;

/// A compatible pair with quantum mutation data `(R, h)`.
#[derive(Clone, Debug)]
pub struct QuantumSeed {
    pair: CompatiblePair,
    data: MutationData,
    yform: Arc<SkewForm>,
    xform: Arc<SkewForm>,
}

impl QuantumSeed {
    pub fn new(pair: CompatiblePair, data: MutationData) -> Result<Self> {
        if data.rank() != pair.n() {
            return Err(Error::Dimension(format!(
                "mutation data has rank {}, B~ has {} columns",
                data.rank(),
                pair.n()
            )));
        }
        if data.h().is_none() {
            return Err(Error::MutationData("quantum seed needs h coefficients".into()));
        }
        let yform = Arc::new(SkewForm::yhat(&pair.d_rational(), &pair.b())?);
        let xform = Arc::new(SkewForm::new(pair.lambda().clone())?);
        Ok(Self {
            pair,
            data,
            yform,
            xform,
        })
    }

    pub fn pair(&self) -> &CompatiblePair {
        &self.pair
    }

    pub fn data(&self) -> &MutationData {
        &self.data
    }

    pub fn n(&self) -> usize {
        self.pair.n()
    }

    pub fn m(&self) -> usize {
        self.pair.m()
    }

    pub fn r(&self) -> Vec<i64> {
        self.data.r_i64()
    }

    pub fn h(&self, k: usize) -> &[QCoeff] {
        &self.data.h().expect("checked in constructor")[k]
    }

    /// Form `DB` of the `Ŷ`-torus, in which F-polynomials live.
    pub fn yhat_form(&self) -> &Arc<SkewForm> {
        &self.yform
    }

    /// Form `Λ` of the initial cluster torus.
    pub fn x_form(&self) -> &Arc<SkewForm> {
        &self.xform
    }

    /// The classical seed `(B, R)` with one formal symbol per reciprocal
    /// pair of interior coefficients.
    pub fn classical_shadow(&self) -> Result<ClassicalSeed> {
        ClassicalSeed::new(self.pair.b(), self.data.clone())
    }
}

/// Patterns, per-step data and compatible pairs along a path.
#[derive(Clone, Debug)]
pub struct QuantumPath {
    pub path: Vec<usize>,
    pub states: Vec<PatternState>,
    pub steps: Vec<PathStep>,
    pub pairs: Vec<CompatiblePair>,
}

impl QuantumPath {
    pub fn new(seed: &QuantumSeed, path: &[usize]) -> Result<Self> {
        let r = seed.r();
        let states = run_path(seed.pair.btilde(), &r, path)?;
        let steps = path_steps(&states, path)?;
        let mut pairs = vec![seed.pair.clone()];
        for (j, &k) in path.iter().enumerate() {
            let next = mutate_pair(&pairs[j], &r, k, states[j].signs[k])?;
            if next.btilde() != &states[j + 1].bt {
                return Err(Error::Internal("pair mutation disagrees with the pattern".into()));
            }
            pairs.push(next);
        }
        Ok(Self {
            path: path.to_vec(),
            states,
            steps,
            pairs,
        })
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }
}

/// `d_(j) (u, v)_D = u^T D v / D_{i_j}`, required integral.
fn d_pairing(u: &[i64], d: &[i64], v: &[i64], ij: usize) -> Result<i64> {
    let num: i64 = u.iter().zip(d).zip(v).map(|((a, w), b)| a * w * b).sum();
    let x = Rational64::new(num, d[ij]);
    if !x.is_integer() {
        return Err(Error::Integrality(format!("bracket argument {x} is not an integer")));
    }
    Ok(x.to_integer())
}

/// The series `z_j` entering `L_j` (`Ŷ^{c_1^+}` for `j = 1`, `L_{j-1,j}`
/// afterwards) and the full table `L_{j,i}`, `i > j`.
#[derive(Clone, Debug)]
pub struct LRecursion {
    pub bases: Vec<BracketBase>,
    /// `table[j][i] = L_{j+1,i+1}` (0-based), present for `i > j`.
    pub table: Vec<Vec<Option<QSeries>>>,
}

impl LRecursion {
    /// `L_j = Σ_s h_s (q^{1/(2d)} z_j)^s`.
    pub fn l(&self, j: usize) -> Result<QSeries> {
        self.bases[j].base()
    }
}

pub fn l_recursion(seed: &QuantumSeed, qp: &QuantumPath, bound: u32) -> Result<LRecursion> {
    let k = qp.len();
    let n = seed.n();
    let d = seed.pair.d();
    let form = seed.yform.clone();
    let mono = |c: &IVec| QSeries::monomial(form.clone(), c.clone(), QCoeff::one(), bound);
    let mut bases: Vec<BracketBase> = Vec::with_capacity(k);
    let mut table: Vec<Vec<Option<QSeries>>> = Vec::with_capacity(k);
    let mut prev: Vec<Option<QSeries>> = Vec::new();
    for j in 0..k {
        let st = &qp.steps[j];
        let z = if j == 0 {
            mono(&st.c_plus)?
        } else {
            prev[j].clone().expect("L_{j-1,j} computed")
        };
        let base = BracketBase::new(seed.h(st.k).to_vec(), d[st.k], z)?;
        let mut row = vec![None; k];
        for i in j + 1..k {
            let a = d_pairing(&st.c_plus, d, &qp.steps[i].chat_plus, st.k)?;
            let corr = base.signed_power(a, st.eps)?;
            let left = if j == 0 {
                mono(&qp.steps[i].c_plus)?
            } else {
                prev[i].clone().expect("L_{j-1,i} computed")
            };
            row[i] = Some(left.mul(&corr)?);
        }
        bases.push(base);
        prev = row.clone();
        table.push(row);
        debug_assert_eq!(n, seed.n());
    }
    Ok(LRecursion { bases, table })
}

/// `X(-g~_k) X_{i_k;t_k}` as the ordered product of bracketed powers of
/// `L_1..L_k`, truncated at `bound`. `k` counts steps of `qp`.
pub fn gupta_product_quantum(seed: &QuantumSeed, qp: &QuantumPath, lrec: &LRecursion, k: usize) -> Result<QSeries> {
    let bound = lrec.bases.first().map_or(0, BracketBase::bound);
    let mut acc = QSeries::one(seed.yform.clone(), bound);
    if k == 0 {
        return Ok(acc);
    }
    let n = seed.n();
    let d = seed.pair.d();
    let gk: IVec = qp.steps[k - 1].gtilde[..n].to_vec();
    for j in 0..k {
        let st = &qp.steps[j];
        let a = d_pairing(&st.c_plus, d, &gk, st.k)?;
        if a != 0 {
            acc = acc.mul(&lrec.bases[j].signed_power(a, st.eps)?)?;
        }
    }
    Ok(acc)
}

/// Convenience wrapper: path data, L-recursion and product for the last
/// step of `path`.
pub fn gupta_product_quantum_path(seed: &QuantumSeed, path: &[usize], bound: u32) -> Result<QSeries> {
    let qp = QuantumPath::new(seed, path)?;
    let lrec = l_recursion(seed, &qp, bound)?;
    gupta_product_quantum(seed, &qp, &lrec, path.len())
}

/// `g~` column of the last step, or `e_i` on the empty path.
pub fn gtilde_of(qp: &QuantumPath, i: usize) -> IVec {
    column(&qp.states.last().expect("nonempty").gtilde, i)
}
