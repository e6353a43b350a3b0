use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::extorus::TorusElem;
use crate::matrix::{column, mat_vec, pos, IVec};
use crate::seedcore::Sign;

use super::extract::QuantumFPoly;
use super::lrec::{QuantumPath, QuantumSeed};

/// `X(g~) F(Ŷ)` in the initial cluster torus, with `Z(α) ↦ X(B~ α)`.
pub fn cluster_variable(seed: &QuantumSeed, gtilde: &[i64], f: &QuantumFPoly) -> Result<TorusElem> {
    let form = seed.x_form().clone();
    let bt = seed.pair().btilde();
    let mut fy = TorusElem::zero(form.clone());
    for (a, c) in f.terms() {
        fy = fy.add(&TorusElem::monomial(form.clone(), mat_vec(bt, a), c.clone()))?;
    }
    TorusElem::x(form, gtilde.to_vec()).mul(&fy)
}

/// Checks every step of `path` against the exchange relation
/// `X_{k;t} X_{k;t'} = Σ_s h_s q^{λ_t(e_k, v_s)/2} X_t(v_s)`, where the
/// cluster at `t` is rebuilt from the separation formula and `fpolys[j]`
/// is `F_{i_j;t_j}`. Both signs are tried.
pub fn separation_check_quantum(seed: &QuantumSeed, qp: &QuantumPath, fpolys: &[QuantumFPoly]) -> Result<()> {
    if fpolys.len() != qp.len() {
        return Err(Error::Dimension("one F-polynomial per step expected".into()));
    }
    let m = seed.m();
    let form = seed.x_form().clone();
    let mut cluster: Vec<TorusElem> = (0..m)
        .map(|i| {
            let mut e = vec![0; m];
            e[i] = 1;
            TorusElem::x(form.clone(), e)
        })
        .collect();
    let r = seed.r();
    for (j, &k) in qp.path.iter().enumerate() {
        let new = cluster_variable(seed, &qp.steps[j].gtilde, &fpolys[j])?;
        let lhs = cluster[k].mul(&new)?;
        let bt = qp.pairs[j].btilde();
        let lam = qp.pairs[j].lambda();
        let bk = column(bt, k);
        for eps in Sign::BOTH {
            let e = eps.value();
            let mut rhs = TorusElem::zero(form.clone());
            for (s, hs) in seed.h(k).iter().enumerate() {
                let s = s as i64;
                let v: IVec = bk
                    .iter()
                    .map(|&b| s * pos(e * b) + (r[k] - s) * pos(-e * b))
                    .collect();
                // λ_t(e_k, v) plus the normal-ordering correction of X_t(v).
                let mut half: i64 = (0..m).map(|l| lam[(k, l)] * v[l]).sum();
                for a in 0..m {
                    for b in a + 1..m {
                        half += v[a] * v[b] * lam[(b, a)];
                    }
                }
                let mut term = TorusElem::monomial(form.clone(), vec![0; m], hs.shift_q(half as i32));
                for (l, &vl) in v.iter().enumerate() {
                    for _ in 0..vl {
                        term = term.mul(&cluster[l])?;
                    }
                }
                rhs = rhs.add(&term)?;
            }
            if lhs != rhs {
                let diff = lhs.sub(&rhs)?;
                let shown: BTreeSet<String> = diff
                    .terms()
                    .iter()
                    .take(6)
                    .map(|(a, c)| format!("({c})X{a:?}"))
                    .collect();
                return Err(Error::Falsified(format!(
                    "exchange relation fails at step {} (direction {}, sign {eps}); differing terms: {}",
                    j + 1,
                    k + 1,
                    shown.into_iter().collect::<Vec<_>>().join(", ")
                )));
            }
        }
        if qp.states[j + 1].gtilde.column(k).iter().copied().collect::<IVec>() != qp.steps[j].gtilde {
            return Err(Error::Internal("g~ column mismatch".into()));
        }
        cluster[k] = new;
    }
    Ok(())
}
