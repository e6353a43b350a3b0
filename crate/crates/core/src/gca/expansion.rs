use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::IVec;
use crate::poly::{binomial, multinomial, Poly};

use super::gupta::{gupta_product, GuptaData};
use super::{ClassicalFPoly, ClassicalSeed};

/// Bracket binomial `{h; n_0, n_1, ..., n_l} = C(h, n_0) · (n_0; n_1..n_l)`,
/// zero unless `n_0 = n_1 + ... + n_l`.
pub fn bracket_binomial(h: i64, n0: u64, parts: &[u64]) -> BigInt {
    if parts.iter().sum::<u64>() != n0 {
        return BigInt::zero();
    }
    binomial(h, n0) * multinomial(parts)
}

#[derive(Clone, Copy, Debug)]
pub struct ExpansionLimits {
    /// Upper bound on visited summation tuples.
    pub max_tuples: u64,
}

impl Default for ExpansionLimits {
    fn default() -> Self {
        Self {
            max_tuples: 5_000_000,
        }
    }
}

/// `F_{i_k;t_k}` as the expanded sum over tuples `(n_s^j)`.
pub fn gupta_expansion(seed: &ClassicalSeed, path: &[usize]) -> Result<ClassicalFPoly> {
    gupta_expansion_with(seed, path, ExpansionLimits::default())
}

pub fn gupta_expansion_with(
    seed: &ClassicalSeed,
    path: &[usize],
    limits: ExpansionLimits,
) -> Result<ClassicalFPoly> {
    if path.is_empty() {
        return Ok(ClassicalFPoly::one(seed.n(), seed.symbols()));
    }
    // Newton box of the product result bounds every contributing tuple.
    let bound = gupta_product(seed, path)?.max_y();
    let data = GuptaData::new(seed, path)?;
    let mut ex = Expander {
        seed,
        data: &data,
        n: seed.n(),
        nvars: seed.n() + seed.symbols().len(),
        bound,
        memo: HashMap::new(),
        visited: 0,
        limits,
        result: Poly::zero(seed.n() + seed.symbols().len()),
    };
    let k = data.len();
    let extra = vec![0; k];
    let coeff = Poly::one(ex.nvars);
    ex.dfs(k, &extra, &vec![0; ex.n], &coeff)?;
    ClassicalFPoly::new(seed.n(), seed.symbols(), ex.result)
}

struct Expander<'a> {
    seed: &'a ClassicalSeed,
    data: &'a GuptaData,
    n: usize,
    nvars: usize,
    bound: IVec,
    memo: HashMap<(usize, i64, i64), Poly>,
    visited: u64,
    limits: ExpansionLimits,
    result: Poly,
}

impl Expander<'_> {
    /// Sum over `(n_0..n_r)` with `Σ s n_s = m` of
    /// `{h; n_0, n_1..n_r} Π_s z_{k,s}^{n_s}`.
    fn block(&mut self, k: usize, h: i64, m: i64) -> Poly {
        if let Some(p) = self.memo.get(&(k, h, m)) {
            return p.clone();
        }
        let z = self.seed.z_polys(k, self.nvars, self.n);
        let r = z.len() - 1;
        let mut out = Poly::zero(self.nvars);
        let mut parts = vec![0u64; r];
        compositions(m, r, &mut parts, 0, &mut |parts| {
            let n0: u64 = parts.iter().sum();
            let c = bracket_binomial(h, n0, parts);
            if c.is_zero() {
                return;
            }
            let mut t = Poly::constant(self.nvars, c);
            for (s, &ns) in parts.iter().enumerate() {
                if ns > 0 {
                    t = t.mul(&z[s + 1].pow(ns as u32));
                }
            }
            out = out.add(&t);
        });
        self.memo.insert((k, h, m), out.clone());
        out
    }

    /// Chooses `m_j = Σ_s s n_s^j` for `j = level-1` down to 0.
    fn dfs(&mut self, level: usize, extra: &[i64], ydeg: &[i64], coeff: &Poly) -> Result<()> {
        self.visited += 1;
        if self.visited > self.limits.max_tuples {
            return Err(Error::Unbounded(format!(
                "more than {} summation tuples visited; Newton box {:?}",
                self.limits.max_tuples, self.bound
            )));
        }
        if level == 0 {
            let mut mono = vec![0; self.nvars];
            mono[..self.n].copy_from_slice(ydeg);
            self.result = self.result.add(&coeff.shift(&mono));
            return Ok(());
        }
        let j = level - 1;
        let st = &self.data.steps[j];
        let r = self.seed.r()[st.k];
        let h = -self.data.gk[j] + extra[j];
        let mut m = 0i64;
        loop {
            let y: IVec = ydeg.iter().zip(&st.c_plus).map(|(a, c)| a + m * c).collect();
            if y.iter().zip(&self.bound).any(|(a, b)| a > b) {
                break;
            }
            if h >= 0 && m > r * h {
                break;
            }
            let p = self.block(st.k, h, m);
            if !p.is_zero() {
                let mut next = extra.to_vec();
                for (jp, x) in next.iter_mut().enumerate().take(j) {
                    *x -= m * self.data.chat[j][jp];
                }
                self.dfs(j, &next, &y, &coeff.mul(&p))?;
            }
            m += 1;
        }
        Ok(())
    }
}

/// Calls `f` on every `(n_1..n_r)` with `Σ s n_s = m`.
fn compositions(m: i64, r: usize, parts: &mut [u64], from: usize, f: &mut impl FnMut(&[u64])) {
    if from == r {
        if m == 0 {
            f(parts);
        }
        return;
    }
    let s = from as i64 + 1;
    let mut ns = 0;
    while ns * s <= m {
        parts[from] = ns as u64;
        compositions(m - ns * s, r, parts, from + 1, f);
        ns += 1;
    }
    parts[from] = 0;
}
