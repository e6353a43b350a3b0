use crate::error::{Error, Result};
use crate::matrix::IVec;
use crate::patterns::{path_steps, run_path, PathStep};
use crate::poly::Poly;

use super::ratfun::{Atoms, Factored};
use super::{pairing, ClassicalFPoly, ClassicalSeed};

/// Path data entering the product formulas for `F_{i_k;t_k}`.
#[derive(Clone, Debug)]
pub struct GuptaData {
    pub steps: Vec<PathStep>,
    pub d0r: Vec<i64>,
    /// `chat[l][j] = (ĉ_l^+, d_(j) c_j)_{D_0 R}` for `j < l`.
    pub chat: Vec<Vec<i64>>,
    /// `gk[j] = (g_k, d_(j) c_j)_{D_0 R}` where `g_k` belongs to the last step.
    pub gk: Vec<i64>,
}

impl GuptaData {
    pub fn new(seed: &ClassicalSeed, path: &[usize]) -> Result<Self> {
        if path.is_empty() {
            return Err(Error::Input("product formulas need a nonempty path".into()));
        }
        let states = run_path(seed.b(), &seed.r(), path)?;
        let steps = path_steps(&states, path)?;
        let d0r = seed.d0r();
        let mut chat = Vec::with_capacity(steps.len());
        for l in 0..steps.len() {
            let row = (0..l)
                .map(|j| pairing(&steps[l].chat_plus, &d0r, &steps[j].c, steps[j].k))
                .collect::<Result<Vec<_>>>()?;
            chat.push(row);
        }
        let g = &steps.last().unwrap().g;
        let gk = steps
            .iter()
            .map(|st| pairing(g, &d0r, &st.c, st.k))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { steps, d0r, chat, gk })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Exponents `-(g_k, d_(j) c_j)_{D_0 R}`, `j = 1..k`, of the Gupta product
/// for the last step of `path`.
pub fn gupta_exponents(seed: &ClassicalSeed, path: &[usize]) -> Result<Vec<i64>> {
    Ok(GuptaData::new(seed, path)?.gk.iter().map(|x| -x).collect())
}

/// `L_1, ..., L_k` in factored form over atoms in `y_1..y_n, z...`.
pub fn gupta_l_sequence(seed: &ClassicalSeed, path: &[usize]) -> Result<(Atoms, Vec<Factored>)> {
    let data = GuptaData::new(seed, path)?;
    Ok(l_sequence(seed, &data))
}

pub(crate) fn l_sequence(seed: &ClassicalSeed, data: &GuptaData) -> (Atoms, Vec<Factored>) {
    let n = seed.n();
    let nvars = n + seed.symbols().len();
    let mut atoms = Atoms::new(nvars);
    let mut ls: Vec<Factored> = Vec::with_capacity(data.len());
    for (l, st) in data.steps.iter().enumerate() {
        let r = seed.r()[st.k];
        // μ = ŷ^{c_l^+} Π_{j<l} L_j^{-(ĉ_l^+, d_(j) c_j)}
        let mut yexp: IVec = vec![0; nvars];
        yexp[..n].copy_from_slice(&st.c_plus);
        let mut mu = Factored::monomial(yexp);
        for (j, lj) in ls.iter().enumerate() {
            let a = -data.chat[l][j];
            if a != 0 {
                mu = mu.mul(&lj.pow(a));
            }
        }
        // Σ_s z_s μ^s = Π N^{min(0, r E)} · N_l
        let floor_exps: Vec<i64> = mu.exps.iter().map(|&e| (r * e).min(0)).collect();
        let floor_mono: IVec = mu.mono.iter().map(|&e| (r * e).min(0)).collect();
        let z = seed.z_polys(st.k, nvars, n);
        let mut num = Poly::zero(nvars);
        for (s, zs) in z.iter().enumerate() {
            let s = s as i64;
            let exps: Vec<i64> = mu.exps.iter().zip(&floor_exps).map(|(e, f)| s * e - f).collect();
            let mono: IVec = mu.mono.iter().zip(&floor_mono).map(|(e, f)| s * e - f).collect();
            num = num.add(&atoms.product(&exps).shift(&mono).mul(zs));
        }
        let floor = Factored {
            mono: floor_mono,
            exps: floor_exps,
        };
        ls.push(floor.mul(&atoms.push_reduced(num)));
    }
    (atoms, ls)
}

/// `F_{i_k;t_k}` for the last step of `path` as the ordered product
/// `Π_j L_j^{-(g_k, d_(j) c_j)_{D_0 R}}`, reduced to a polynomial.
pub fn gupta_product(seed: &ClassicalSeed, path: &[usize]) -> Result<ClassicalFPoly> {
    if path.is_empty() {
        return Ok(ClassicalFPoly::one(seed.n(), seed.symbols()));
    }
    let data = GuptaData::new(seed, path)?;
    let (mut atoms, ls) = l_sequence(seed, &data);
    let mut prod = Factored::one(atoms.nvars());
    for (lj, gj) in ls.iter().zip(&data.gk) {
        if *gj != 0 {
            prod = prod.mul(&lj.pow(-gj));
        }
    }
    let p = prod
        .expand(&mut atoms)
        .to_polynomial()
        .map_err(|_| Error::Falsified("Gupta product is not a polynomial".into()))?;
    ClassicalFPoly::new(seed.n(), seed.symbols(), p)
}
