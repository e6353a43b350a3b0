//! C-, G- and extended G-matrix patterns along a mutation path, plus the
//! duality identities between them as executable checks.

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{column, diag, mat_vec, pos, principal_part, to_rows, weighted_dot, IMat, IVec};
use crate::seedcore::{e_matrix, mutate_exchange_classical, skew_symmetrizer, Sign};

/// Common sign of a nonzero sign-coherent vector.
pub fn common_sign(c: &[i64]) -> Result<Sign> {
    let has_pos = c.iter().any(|&x| x > 0);
    let has_neg = c.iter().any(|&x| x < 0);
    match (has_pos, has_neg) {
        (true, false) => Ok(Sign::Plus),
        (false, true) => Ok(Sign::Minus),
        (false, false) => Err(Error::SignCoherence(format!("zero vector {c:?}"))),
        (true, true) => Err(Error::SignCoherence(format!("mixed signs in {c:?}"))),
    }
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k >= n {
        Err(Error::IndexOutOfRange { index: k + 1, n })
    } else {
        Ok(())
    }
}

/// One step of the C-matrix recursion; `b` is the current principal part.
pub fn c_step(c: &IMat, b: &IMat, r: &[i64], k: usize, eps: Sign) -> Result<IMat> {
    let n = c.ncols();
    check_k(k, n)?;
    let e = eps.value();
    let mut out = c.clone();
    for i in 0..c.nrows() {
        for j in 0..n {
            out[(i, j)] = if j == k {
                -c[(i, j)]
            } else {
                c[(i, j)] + r[k] * (c[(i, k)] * pos(e * b[(k, j)]) + pos(-e * c[(i, k)]) * b[(k, j)])
            };
        }
    }
    Ok(out)
}

/// G-matrix step in sign-coherent form: only column `k` changes, using the
/// common sign of the current c-vector `c_k`.
pub fn g_step_classical(g: &IMat, c: &IMat, b: &IMat, r: &[i64], k: usize) -> Result<IMat> {
    let n = g.ncols();
    check_k(k, n)?;
    let eps = common_sign(&column(c, k))?.value();
    let mut col: IVec = column(g, k).iter().map(|x| -x).collect();
    for j in 0..n {
        let w = r[k] * pos(-eps * b[(j, k)]);
        if w != 0 {
            for (i, x) in col.iter_mut().enumerate() {
                *x += w * g[(i, j)];
            }
        }
    }
    let mut out = g.clone();
    for (i, x) in col.into_iter().enumerate() {
        out[(i, k)] = x;
    }
    Ok(out)
}

/// Extended g-vector step with an arbitrary sign: sums over all `m` rows of
/// the current `B~` and corrects by columns of the initial `B~`.
pub fn g_step_quantum(
    gt: &IMat,
    c: &IMat,
    bt: &IMat,
    bt0: &IMat,
    r: &[i64],
    k: usize,
    eps: Sign,
) -> Result<IMat> {
    let (m, n) = bt.shape();
    check_k(k, n)?;
    let e = eps.value();
    let mut col: IVec = column(gt, k).iter().map(|x| -x).collect();
    for j in 0..m {
        let w = r[k] * pos(-e * bt[(j, k)]);
        if w != 0 {
            for (i, x) in col.iter_mut().enumerate() {
                *x += w * gt[(i, j)];
            }
        }
    }
    for j in 0..n {
        let w = r[k] * pos(-e * c[(j, k)]);
        if w != 0 {
            for (i, x) in col.iter_mut().enumerate() {
                *x -= w * bt0[(i, j)];
            }
        }
    }
    let mut out = gt.clone();
    for (i, x) in col.into_iter().enumerate() {
        out[(i, k)] = x;
    }
    Ok(out)
}

/// `G~' = G~ E_{k,ε_k}` with `ε_k` the common sign of `c_k`.
pub fn g_step_quantum_fast(gt: &IMat, c: &IMat, bt: &IMat, r: &[i64], k: usize) -> Result<IMat> {
    let eps = common_sign(&column(c, k))?;
    Ok(gt * e_matrix(bt, r, k, eps)?)
}

/// Runs the general form with both signs and the fast form; all three
/// must agree.
pub fn g_step_quantum_checked(gt: &IMat, c: &IMat, bt: &IMat, bt0: &IMat, r: &[i64], k: usize) -> Result<IMat> {
    let fast = g_step_quantum_fast(gt, c, bt, r, k)?;
    for eps in Sign::BOTH {
        let slow = g_step_quantum(gt, c, bt, bt0, r, k, eps)?;
        if slow != fast {
            return Err(Error::Internal(format!(
                "g-vector forms disagree in direction {} (sign {eps})",
                k + 1
            )));
        }
    }
    Ok(fast)
}

/// Data attached to one vertex of a mutation path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternState {
    pub t_index: usize,
    pub c: IMat,
    pub g: IMat,
    pub gtilde: IMat,
    /// Current `B~` (`m x n`; `m = n` for purely classical runs).
    pub bt: IMat,
    /// Signs `ε_{k;t}` of all current c-vectors.
    pub signs: Vec<Sign>,
}

impl PatternState {
    pub fn initial(bt: &IMat) -> Result<Self> {
        let (m, n) = bt.shape();
        let c = IMat::identity(n, n);
        let signs = signs_of(&c)?;
        Ok(Self {
            t_index: 0,
            c,
            g: IMat::identity(n, n),
            gtilde: IMat::identity(m, m),
            bt: bt.clone(),
            signs,
        })
    }

    pub fn n(&self) -> usize {
        self.bt.ncols()
    }

    pub fn b(&self) -> IMat {
        principal_part(&self.bt)
    }

    /// Mutates in direction `k`, checking sign-coherence, the agreement of
    /// the two g-recursions and the agreement of the G~ forms.
    pub fn step(&self, bt0: &IMat, r: &[i64], k: usize) -> Result<Self> {
        check_k(k, self.n())?;
        let b = self.b();
        let b0 = principal_part(bt0);
        let c = c_step(&self.c, &b, r, k, Sign::Plus)?;
        if c != c_step(&self.c, &b, r, k, Sign::Minus)? {
            return Err(Error::Internal("c-step depends on the sign".into()));
        }
        let g = g_step_classical(&self.g, &self.c, &b, r, k)?;
        for eps in Sign::BOTH {
            if g != g_step_general(&self.g, &self.c, &b, &b0, r, k, eps)? {
                return Err(Error::Internal("g-recursions disagree".into()));
            }
        }
        let gtilde = g_step_quantum_checked(&self.gtilde, &self.c, &self.bt, bt0, r, k)?;
        let bt = mutate_exchange_classical(&self.bt, r, k, Sign::Plus)?;
        let signs = signs_of(&c)?;
        Ok(Self {
            t_index: self.t_index + 1,
            c,
            g,
            gtilde,
            bt,
            signs,
        })
    }
}

/// General g-step without sign-coherence, columns of `B_{t0}` as correction.
pub fn g_step_general(g: &IMat, c: &IMat, b: &IMat, b0: &IMat, r: &[i64], k: usize, eps: Sign) -> Result<IMat> {
    g_step_quantum(g, c, b, b0, r, k, eps)
}

fn signs_of(c: &IMat) -> Result<Vec<Sign>> {
    (0..c.ncols()).map(|j| common_sign(&column(c, j))).collect()
}

/// All states `t_0, ..., t_k` along `path`.
pub fn run_path(bt0: &IMat, r: &[i64], path: &[usize]) -> Result<Vec<PatternState>> {
    if r.len() != bt0.ncols() {
        return Err(Error::Dimension("r has wrong length".into()));
    }
    let mut states = vec![PatternState::initial(bt0)?];
    for &k in path {
        let next = states.last().unwrap().step(bt0, r, k)?;
        states.push(next);
    }
    Ok(states)
}

/// Per-step quantities used by the product formulas. Index `j` refers to
/// the edge `t_{j-1} -- t_j` in direction `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStep {
    pub k: usize,
    /// `c_{k;t_{j-1}}`.
    pub c: IVec,
    pub eps: Sign,
    pub c_plus: IVec,
    /// `B c^+` with `B` the initial principal part.
    pub chat_plus: IVec,
    /// `g_{k;t_j}`.
    pub g: IVec,
    /// `g~_{k;t_j}`.
    pub gtilde: IVec,
}

pub fn path_steps(states: &[PatternState], path: &[usize]) -> Result<Vec<PathStep>> {
    if states.len() != path.len() + 1 {
        return Err(Error::Dimension("states do not match path".into()));
    }
    let b0 = states[0].b();
    path.iter()
        .enumerate()
        .map(|(j, &k)| {
            let c = column(&states[j].c, k);
            let eps = common_sign(&c)?;
            let c_plus: IVec = c.iter().map(|x| eps.value() * x).collect();
            let chat_plus = mat_vec(&b0, &c_plus);
            Ok(PathStep {
                k,
                c,
                eps,
                c_plus,
                chat_plus,
                g: column(&states[j + 1].g, k),
                gtilde: column(&states[j + 1].gtilde, k),
            })
        })
        .collect()
}

/// Smallest positive integer diagonal `D_0` with `D_0 R B` skew-symmetric.
pub fn d0_of(b: &IMat, r: &[i64]) -> Result<Vec<i64>> {
    skew_symmetrizer(&(diag(r) * b))
}

/// `D_0^{-1} R^{-1} G^T D_0 R C = I`.
pub fn verify_tropical_duality(g: &IMat, c: &IMat, d0: &[i64], r: &[i64]) -> bool {
    let n = g.nrows();
    let d0r: Vec<i64> = d0.iter().zip(r).map(|(a, b)| a * b).collect();
    let lhs = g.transpose() * diag(&d0r) * c;
    // Left factor D_0^{-1} R^{-1}: row i must equal (D_0 R)_ii e_i.
    (0..n).all(|i| (0..n).all(|j| lhs[(i, j)] == if i == j { d0r[i] } else { 0 }))
}

/// `(u, v)_{W}` for a diagonal weight.
pub fn inner(u: &[i64], w: &[i64], v: &[i64]) -> Rational64 {
    let w: Vec<Rational64> = w.iter().map(|&x| Rational64::from_integer(x)).collect();
    weighted_dot(u, &w, v)
}

/// `(g_i, d_j c_j)_{D_0 R} = δ_ij` with `d_j = 1 / (D_0 R)_jj`.
pub fn verify_inner_duality(g: &IMat, c: &IMat, d0: &[i64], r: &[i64]) -> bool {
    let n = g.nrows();
    let d0r: Vec<i64> = d0.iter().zip(r).map(|(a, b)| a * b).collect();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let v = inner(&column(g, i), &d0r, &column(c, j)) / Rational64::from_integer(d0r[j]);
            v == Rational64::from_integer(i64::from(i == j))
        })
    })
}

/// `G B_t = B_{t0} C` (also for `G~ B~_t = B~_{t0} C`).
pub fn verify_gb_bc(g: &IMat, bt: &IMat, bt0: &IMat, c: &IMat) -> bool {
    g * bt == bt0 * c
}

/// `c_i^T [D 0] g~_j = d_i^{-1} δ_ij`.
pub fn verify_d_form_duality(c: &IMat, gtilde: &IMat, d: &[i64]) -> bool {
    let n = c.ncols();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let v: i64 = (0..n).map(|l| c[(l, i)] * d[l] * gtilde[(l, j)]).sum();
            v == if i == j { d[i] } else { 0 }
        })
    })
}

/// JSON-facing dump of one vertex.
#[derive(Clone, Debug, Serialize)]
pub struct VertexDump {
    pub t: usize,
    #[serde(rename = "Btilde")]
    pub btilde: Vec<Vec<i64>>,
    #[serde(rename = "Lambda", skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<Vec<i64>>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<i64>>,
    #[serde(rename = "G")]
    pub g: Vec<Vec<i64>>,
    #[serde(rename = "Gtilde")]
    pub gtilde: Vec<Vec<i64>>,
    pub signs: Vec<i64>,
}

impl PatternState {
    pub fn dump(&self, lambda: Option<&IMat>) -> VertexDump {
        VertexDump {
            t: self.t_index,
            btilde: to_rows(&self.bt),
            lambda: lambda.map(to_rows),
            c: to_rows(&self.c),
            g: to_rows(&self.g),
            gtilde: to_rows(&self.gtilde),
            signs: self.signs.iter().map(|s| s.value()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::from_rows;

    fn m(rows: &[&[i64]]) -> IMat {
        from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn ex1() -> (IMat, Vec<i64>, Vec<usize>) {
        (m(&[&[0, 1], &[-1, 0]]), vec![2, 1], vec![0, 1, 0, 1])
    }

    #[test]
    fn signs() {
        assert_eq!(common_sign(&[2, 1]).unwrap(), Sign::Plus);
        assert_eq!(common_sign(&[0, -1]).unwrap(), Sign::Minus);
        assert!(matches!(common_sign(&[1, -1]), Err(Error::SignCoherence(_))));
        assert!(common_sign(&[0, 0]).is_err());
    }

    #[test]
    fn ex1_vectors() {
        let (b, r, path) = ex1();
        let states = run_path(&b, &r, &path).unwrap();
        let steps = path_steps(&states, &path).unwrap();
        let cs: Vec<IVec> = steps.iter().map(|s| s.c.clone()).collect();
        assert_eq!(cs, vec![vec![1, 0], vec![2, 1], vec![1, 1], vec![0, 1]]);
        let ch: Vec<IVec> = steps.iter().map(|s| s.chat_plus.clone()).collect();
        assert_eq!(ch, vec![vec![0, -1], vec![1, -2], vec![1, -1], vec![1, 0]]);
        let gs: Vec<IVec> = steps.iter().map(|s| s.g.clone()).collect();
        assert_eq!(gs, vec![vec![-1, 2], vec![-1, 1], vec![-1, 0], vec![0, -1]]);
        let d0 = d0_of(&b, &r).unwrap();
        assert_eq!(d0, vec![1, 2]);
        for s in &states {
            assert!(verify_tropical_duality(&s.g, &s.c, &d0, &r));
            assert!(verify_inner_duality(&s.g, &s.c, &d0, &r));
            assert!(verify_gb_bc(&s.g, &s.b(), &b, &s.c));
        }
    }

    #[test]
    fn first_step_negates_column() {
        let (b, r, _) = ex1();
        let c = c_step(&IMat::identity(2, 2), &b, &r, 0, Sign::Plus).unwrap();
        assert_eq!(c, m(&[&[-1, 2], &[0, 1]]));
    }

    #[test]
    fn empty_path_is_identity() {
        let (b, r, _) = ex1();
        let states = run_path(&b, &r, &[]).unwrap();
        assert_eq!(states.len(), 1);
        assert_eq!(states[0].g, IMat::identity(2, 2));
        assert!(verify_gb_bc(&states[0].g, &b, &b, &states[0].c));
    }

    #[test]
    fn g2_gvectors() {
        let b = m(&[&[0, 1], &[-1, 0]]);
        let path = [0, 1, 0, 1, 0, 1, 0, 1];
        let states = run_path(&b, &[3, 1], &path).unwrap();
        let steps = path_steps(&states, &path).unwrap();
        let gs: Vec<IVec> = steps.iter().map(|s| s.gtilde.clone()).collect();
        assert_eq!(
            gs,
            vec![
                vec![-1, 3],
                vec![-1, 2],
                vec![-2, 3],
                vec![-1, 1],
                vec![-1, 0],
                vec![0, -1],
                vec![1, 0],
                vec![0, 1]
            ]
        );
        for s in &states {
            assert!(verify_d_form_duality(&s.c, &s.gtilde, &[1, 1]));
            assert!(verify_gb_bc(&s.gtilde, &s.bt, &b, &s.c));
        }
    }

    /// Ordinary c-vector recursion for a skew-symmetrizable matrix, used as
    /// an oracle: the C-pattern of `(B, r)` is the ordinary C-pattern of `RB`.
    fn ordinary_c_path(b: &IMat, path: &[usize]) -> IMat {
        let n = b.nrows();
        let mut c = IMat::identity(n, n);
        let mut b = b.clone();
        for &k in path {
            let mut c2 = c.clone();
            for i in 0..n {
                for j in 0..n {
                    c2[(i, j)] = if j == k {
                        -c[(i, j)]
                    } else {
                        c[(i, j)] + (c[(i, k)].abs() * b[(k, j)] + c[(i, k)] * b[(k, j)].abs()) / 2
                    };
                }
            }
            let mut b2 = b.clone();
            for i in 0..n {
                for j in 0..n {
                    b2[(i, j)] = if i == k || j == k {
                        -b[(i, j)]
                    } else {
                        b[(i, j)] + (b[(i, k)].abs() * b[(k, j)] + b[(i, k)] * b[(k, j)].abs()) / 2
                    };
                }
            }
            c = c2;
            b = b2;
        }
        c
    }

    #[test]
    fn c_pattern_matches_ordinary_pattern_of_rb() {
        let b = m(&[&[0, 1, -1], &[-2, 0, 1], &[2, -1, 0]]);
        let r = [1, 2, 2];
        assert!(d0_of(&b, &r).is_ok());
        let path = [0, 1, 2, 0, 2, 1];
        let states = run_path(&b, &r, &path).unwrap();
        let rb = diag(&r) * &b;
        for t in 0..=path.len() {
            assert_eq!(states[t].c, ordinary_c_path(&rb, &path[..t]));
        }
    }
}
