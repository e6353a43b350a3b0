use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::{column, mat_vec, pos, IMat, IVec};
use crate::patterns::{run_path, PatternState};
use crate::poly::Poly;
use crate::seedcore::Sign;

use super::{ClassicalFPoly, ClassicalSeed};

/// Cluster variables at every vertex of a path, as Laurent polynomials in
/// the ring `x_1..x_n, y_1..y_n, z...`.
#[derive(Clone, Debug)]
pub struct ClassicalRun {
    pub seed: ClassicalSeed,
    pub path: Vec<usize>,
    pub states: Vec<PatternState>,
    pub clusters: Vec<Vec<Poly>>,
}

impl ClassicalRun {
    pub fn nvars(&self) -> usize {
        2 * self.seed.n() + self.seed.symbols().len()
    }

    /// `F_{i;t}` for vertex index `t` along the path.
    pub fn f_poly(&self, t: usize, i: usize) -> Result<ClassicalFPoly> {
        let n = self.seed.n();
        let x = self
            .clusters
            .get(t)
            .ok_or(Error::IndexOutOfRange { index: t, n: self.path.len() })?
            .get(i)
            .ok_or(Error::IndexOutOfRange { index: i + 1, n })?;
        let s = self.seed.symbols().len();
        let map: Vec<Option<usize>> = (0..n)
            .map(|_| None)
            .chain((0..n + s).map(Some))
            .collect();
        ClassicalFPoly::new(n, self.seed.symbols(), x.remap(n + s, &map))
    }
}

/// New cluster variable `x_k'` from the generalized exchange relation in
/// sign `eps`. `x` is the current cluster, `b` the current exchange matrix,
/// `c_k` the exponent vector of `y_{k;t}` and `z` the coefficients
/// `z_{k,0..r}` in the same ring.
pub fn mutate_cluster_variable(
    x: &[Poly],
    b: &IMat,
    c_k: &[i64],
    r: i64,
    z: &[Poly],
    k: usize,
    eps: Sign,
) -> Result<Poly> {
    let n = x.len();
    let nvars = x[k].nvars();
    let e = eps.value();
    let mut powers: HashMap<(usize, i64), Poly> = HashMap::new();
    let mut num = Poly::zero(nvars);
    for (s, zs) in z.iter().enumerate() {
        let s = s as i64;
        let mut ymono = vec![0; nvars];
        for i in 0..n {
            ymono[n + i] = e * s * c_k[i] - (e * r * c_k[i]).min(0);
            debug_assert!(ymono[n + i] >= 0);
        }
        let mut term = zs.shift(&ymono);
        for j in 0..n {
            let exp = r * pos(-e * b[(j, k)]) + e * s * b[(j, k)];
            debug_assert!(exp >= 0);
            if exp > 0 {
                let p = powers
                    .entry((j, exp))
                    .or_insert_with(|| x[j].pow(exp as u32));
                term = term.mul(p);
            }
        }
        num = num.add(&term);
    }
    num.exact_div(&x[k]).map_err(|err| match err {
        Error::Falsified(_) => Error::Falsified(format!(
            "exchange relation in direction {} is not Laurent",
            k + 1
        )),
        other => other,
    })
}

/// Tropical mutation of the coefficient tuple, with `y_{j;t}` stored as
/// column `j` of `c`.
pub fn tropical_y_step(c: &IMat, b: &IMat, r: &[i64], k: usize, eps: Sign) -> IMat {
    let n = c.ncols();
    let e = eps.value();
    let ck = column(c, k);
    // Exponent of the tropical sum over s of y_k^{eps s}.
    let trop: IVec = ck.iter().map(|&x| (e * r[k] * x).min(0)).collect();
    let mut out = c.clone();
    for i in 0..n {
        for row in 0..c.nrows() {
            out[(row, i)] = if i == k {
                -ck[row]
            } else {
                c[(row, i)] + r[k] * pos(e * b[(k, i)]) * ck[row] - b[(k, i)] * trop[row]
            };
        }
    }
    out
}

pub fn run_classical(seed: &ClassicalSeed, path: &[usize]) -> Result<ClassicalRun> {
    let n = seed.n();
    let r = seed.r();
    let states = run_path(seed.b(), &r, path)?;
    let s = seed.symbols().len();
    let nvars = 2 * n + s;
    let mut clusters = vec![(0..n).map(|i| Poly::var(nvars, i)).collect::<Vec<_>>()];
    for (j, &k) in path.iter().enumerate() {
        let st = &states[j];
        let ck = column(&st.c, k);
        let eps = st.signs[k];
        let trop = tropical_y_step(&st.c, &st.b(), &r, k, eps);
        if trop != states[j + 1].c {
            return Err(Error::Internal("tropical coefficients disagree with the C-matrix".into()));
        }
        let z = seed.z_polys(k, nvars, 2 * n);
        let prev = clusters.last().unwrap();
        let xk = mutate_cluster_variable(prev, &st.b(), &ck, r[k], &z, k, eps)?;
        let mut next = prev.clone();
        next[k] = xk;
        clusters.push(next);
    }
    Ok(ClassicalRun {
        seed: seed.clone(),
        path: path.to_vec(),
        states,
        clusters,
    })
}

/// `F_{i;t}` at the end of `path`.
pub fn f_poly_direct(seed: &ClassicalSeed, path: &[usize], i: usize) -> Result<ClassicalFPoly> {
    let run = run_classical(seed, path)?;
    run.f_poly(path.len(), i)
}

/// `F_{i_j;t_j}` for every step `j` of `path`.
pub fn f_polys_direct(seed: &ClassicalSeed, path: &[usize]) -> Result<Vec<ClassicalFPoly>> {
    let run = run_classical(seed, path)?;
    path.iter()
        .enumerate()
        .map(|(j, &k)| run.f_poly(j + 1, k))
        .collect()
}

/// Rebuilds every `x_{i;t}` as `x^{g_{i;t}} F_{i;t}(ŷ)` and compares with
/// the mutation result.
pub fn separation_check_classical(run: &ClassicalRun) -> Result<()> {
    let n = run.seed.n();
    let b0 = run.seed.b();
    let nvars = run.nvars();
    for (t, cluster) in run.clusters.iter().enumerate() {
        for (i, x) in cluster.iter().enumerate() {
            let f = run.f_poly(t, i)?;
            let g = column(&run.states[t].g, i);
            let mut rebuilt = Poly::zero(nvars);
            for (e, c) in f.poly().terms() {
                let (a, w) = e.split_at(n);
                let xa = mat_vec(b0, a);
                let mut mono: IVec = Vec::with_capacity(nvars);
                mono.extend(xa.iter().zip(&g).map(|(p, q)| p + q));
                mono.extend_from_slice(a);
                mono.extend_from_slice(w);
                rebuilt.add_term(mono, c.clone());
            }
            if &rebuilt != x {
                return Err(Error::Falsified(format!(
                    "separation formula fails for x_{};t{t}",
                    i + 1
                )));
            }
        }
    }
    Ok(())
}
