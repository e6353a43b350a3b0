//! Mutation data, compatible pairs and matrix-level mutation.
//!
//! Directions are 0-based throughout the library; only user-facing text
//! (paths on the command line, error messages) is 1-based.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{diag, is_skew, pos, principal_part, IMat};
use crate::qcoeff::QCoeff;

/// A sign `ε ∈ {+1, -1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A classical exchange coefficient `z_{k,s}`: an integer or a formal symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ZEntry {
    Int(BigInt),
    Symbol(String),
}

impl ZEntry {
    pub fn one() -> Self {
        ZEntry::Int(BigInt::one())
    }

    fn is_one(&self) -> bool {
        matches!(self, ZEntry::Int(v) if v.is_one())
    }
}

impl fmt::Display for ZEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZEntry::Int(v) => write!(f, "{v}"),
            ZEntry::Symbol(s) => f.write_str(s),
        }
    }
}

/// The mutation data `(R, h)` together with its classical shadow `(r, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationData {
    r: Vec<u32>,
    h: Option<Vec<Vec<QCoeff>>>,
    z: Vec<Vec<ZEntry>>,
}

fn check_palindrome<T: PartialEq + fmt::Display>(
    k: usize,
    r: u32,
    list: &[T],
    is_one: impl Fn(&T) -> bool,
    what: &str,
) -> Result<()> {
    if list.len() != r as usize + 1 {
        return Err(Error::MutationData(format!(
            "direction {}: expected {} {what} entries, got {}",
            k + 1,
            r + 1,
            list.len()
        )));
    }
    if !is_one(&list[0]) || !is_one(&list[r as usize]) {
        return Err(Error::MutationData(format!(
            "direction {}: {what} must start and end with 1",
            k + 1
        )));
    }
    for s in 0..=r as usize {
        if list[s] != list[r as usize - s] {
            return Err(Error::MutationData(format!(
                "direction {}: {what} is not palindromic ({} vs {})",
                k + 1,
                list[s],
                list[r as usize - s]
            )));
        }
    }
    Ok(())
}

impl MutationData {
    pub fn new(r: Vec<u32>, h: Option<Vec<Vec<QCoeff>>>, z: Vec<Vec<ZEntry>>) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::MutationData("rank must be positive".into()));
        }
        if let Some(k) = r.iter().position(|&x| x == 0) {
            return Err(Error::MutationData(format!("r_{} must be positive", k + 1)));
        }
        if z.len() != r.len() {
            return Err(Error::MutationData("z has wrong number of directions".into()));
        }
        for (k, zk) in z.iter().enumerate() {
            check_palindrome(k, r[k], zk, ZEntry::is_one, "z")?;
        }
        if let Some(h) = &h {
            if h.len() != r.len() {
                return Err(Error::MutationData("h has wrong number of directions".into()));
            }
            for (k, hk) in h.iter().enumerate() {
                check_palindrome(k, r[k], hk, QCoeff::is_one, "h")?;
            }
        }
        Ok(Self { r, h, z })
    }

    /// Classical data only.
    pub fn classical(r: Vec<u32>, z: Vec<Vec<ZEntry>>) -> Result<Self> {
        Self::new(r, None, z)
    }

    /// Quantum data; the classical shadow gets one formal symbol `zK_S` per
    /// reciprocal pair of interior coefficients.
    pub fn quantum(r: Vec<u32>, h: Vec<Vec<QCoeff>>) -> Result<Self> {
        let z = r
            .iter()
            .enumerate()
            .map(|(k, &rk)| {
                (0..=rk)
                    .map(|s| {
                        if s == 0 || s == rk {
                            ZEntry::one()
                        } else {
                            ZEntry::Symbol(format!("z{}_{}", k + 1, s.min(rk - s)))
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(r, Some(h), z)
    }

    /// All interior coefficients formal, named `zK_S`.
    pub fn formal(r: Vec<u32>) -> Result<Self> {
        let h = r
            .iter()
            .map(|&rk| vec![QCoeff::one(); rk as usize + 1])
            .collect();
        let mut md = Self::quantum(r, h)?;
        md.h = None;
        Ok(md)
    }

    pub fn rank(&self) -> usize {
        self.r.len()
    }

    pub fn r(&self) -> &[u32] {
        &self.r
    }

    pub fn r_i64(&self) -> Vec<i64> {
        self.r.iter().map(|&x| x as i64).collect()
    }

    pub fn h(&self) -> Option<&[Vec<QCoeff>]> {
        self.h.as_deref()
    }

    pub fn z(&self) -> &[Vec<ZEntry>] {
        &self.z
    }

    /// Distinct formal symbols in order of first appearance.
    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for zk in &self.z {
            for e in zk {
                if let ZEntry::Symbol(s) = e {
                    if !out.contains(s) {
                        out.push(s.clone());
                    }
                }
            }
        }
        out
    }

    /// For each formal symbol, the value `h_{k,s}(1)` as a polynomial in the
    /// free parameter (coefficients by degree). Requires quantum data.
    pub fn symbol_values_at_q_one(&self) -> Result<BTreeMap<String, Vec<BigInt>>> {
        let h = self
            .h
            .as_ref()
            .ok_or_else(|| Error::MutationData("no quantum coefficients".into()))?;
        let mut out = BTreeMap::new();
        for (k, zk) in self.z.iter().enumerate() {
            for (s, e) in zk.iter().enumerate() {
                if let ZEntry::Symbol(name) = e {
                    out.entry(name.clone())
                        .or_insert_with(|| h[k][s].at_q_one());
                }
            }
        }
        Ok(out)
    }

    /// `h_{k,s}(1) > 0` for every entry, with the parameter set to 1.
    pub fn h_positive_at_one(&self) -> bool {
        self.h.as_ref().is_some_and(|h| {
            h.iter()
                .flatten()
                .all(|c| c.eval_at_one() > BigInt::zero())
        })
    }
}

/// Compatible pair `(B~, L)` with `B~^T L = [D 0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatiblePair {
    btilde: IMat,
    lambda: IMat,
    d: Vec<i64>,
}

/// Checks `B~^T L = [D 0]` with `D` positive diagonal and returns `D`.
pub fn check_compatible(btilde: &IMat, lambda: &IMat) -> Result<Vec<i64>> {
    let (m, n) = btilde.shape();
    if n == 0 || m < n {
        return Err(Error::Dimension(format!("B~ must be m x n with m >= n >= 1, got {m} x {n}")));
    }
    if lambda.shape() != (m, m) {
        return Err(Error::Dimension(format!(
            "Lambda must be {m} x {m}, got {} x {}",
            lambda.nrows(),
            lambda.ncols()
        )));
    }
    if !is_skew(lambda) {
        return Err(Error::Incompatible("Lambda is not skew-symmetric".into()));
    }
    let p = btilde.transpose() * lambda;
    let mut d = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..m {
            let v = p[(i, j)];
            if i == j {
                if v <= 0 {
                    return Err(Error::Incompatible(format!(
                        "diagonal entry {} of B~^T Lambda is {v}, not positive",
                        i + 1
                    )));
                }
                d.push(v);
            } else if v != 0 {
                return Err(Error::Incompatible(format!(
                    "entry ({},{}) of B~^T Lambda is {v}, expected 0",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let db = diag(&d) * principal_part(btilde);
    if !is_skew(&db) {
        return Err(Error::Incompatible("DB is not skew-symmetric".into()));
    }
    Ok(d)
}

/// Smallest positive integer diagonal `D` with `DB` skew-symmetric.
pub fn skew_symmetrizer(b: &IMat) -> Result<Vec<i64>> {
    let n = b.nrows();
    if !b.is_square() {
        return Err(Error::Dimension("exchange matrix must be square".into()));
    }
    for i in 0..n {
        if b[(i, i)] != 0 {
            return Err(Error::NotSkewSymmetrizable(format!("nonzero diagonal at {}", i + 1)));
        }
        for j in 0..n {
            let (x, y) = (b[(i, j)], b[(j, i)]);
            if (x == 0) != (y == 0) || (x != 0 && x.signum() == y.signum()) {
                return Err(Error::NotSkewSymmetrizable(format!(
                    "entries ({},{})={x} and ({},{})={y} are not sign-skew",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    let mut ratio: Vec<Option<Rational64>> = vec![None; n];
    let mut out = vec![0i64; n];
    for root in 0..n {
        if ratio[root].is_some() {
            continue;
        }
        ratio[root] = Some(Rational64::one());
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let di = ratio[i].unwrap();
            for j in 0..n {
                if b[(i, j)] == 0 {
                    continue;
                }
                // d_i b_ij = -d_j b_ji
                let dj = di * Rational64::new(b[(i, j)], -b[(j, i)]);
                match ratio[j] {
                    Some(x) if x != dj => {
                        return Err(Error::NotSkewSymmetrizable(format!(
                            "inconsistent ratios around direction {}",
                            j + 1
                        )))
                    }
                    Some(_) => {}
                    None => {
                        ratio[j] = Some(dj);
                        comp.push(j);
                        stack.push(j);
                    }
                }
            }
        }
        let l = comp
            .iter()
            .fold(1i64, |acc, &i| acc.lcm(ratio[i].unwrap().denom()));
        let scaled: Vec<i64> = comp
            .iter()
            .map(|&i| (ratio[i].unwrap() * Rational64::from_integer(l)).to_integer())
            .collect();
        let g = scaled.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for (&i, v) in comp.iter().zip(scaled) {
            out[i] = v / g;
        }
    }
    Ok(out)
}

impl CompatiblePair {
    pub fn new(btilde: IMat, lambda: IMat) -> Result<Self> {
        let d = check_compatible(&btilde, &lambda)?;
        Ok(Self { btilde, lambda, d })
    }

    /// Principal-coefficient pair `B~ = [B; I]` with
    /// `L = [[0, -D], [D, -DB]]`, where `D` is the minimal skew-symmetrizer.
    pub fn principal(b: &IMat) -> Result<Self> {
        let n = b.nrows();
        let d = skew_symmetrizer(b)?;
        let dm = diag(&d);
        let db = &dm * b;
        let mut bt = IMat::zeros(2 * n, n);
        bt.view_mut((0, 0), (n, n)).copy_from(b);
        bt.view_mut((n, 0), (n, n)).copy_from(&IMat::identity(n, n));
        let mut lam = IMat::zeros(2 * n, 2 * n);
        lam.view_mut((0, n), (n, n)).copy_from(&(-&dm));
        lam.view_mut((n, 0), (n, n)).copy_from(&dm);
        lam.view_mut((n, n), (n, n)).copy_from(&(-db));
        Self::new(bt, lam)
    }

    pub fn btilde(&self) -> &IMat {
        &self.btilde
    }

    pub fn lambda(&self) -> &IMat {
        &self.lambda
    }

    /// Diagonal entries `d_i^{-1}` of `D`.
    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub fn d_rational(&self) -> Vec<Rational64> {
        self.d.iter().map(|&x| Rational64::from_integer(x)).collect()
    }

    pub fn n(&self) -> usize {
        self.btilde.ncols()
    }

    pub fn m(&self) -> usize {
        self.btilde.nrows()
    }

    pub fn b(&self) -> IMat {
        principal_part(&self.btilde)
    }
}

fn check_direction(k: usize, n: usize) -> Result<()> {
    if k >= n {
        Err(Error::IndexOutOfRange { index: k + 1, n })
    } else {
        Ok(())
    }
}

/// `E_{k,ε}^{B~R}`: identity except column `k`, which holds `-1` on the
/// diagonal and `[-ε b_ik r_k]_+` elsewhere.
pub fn e_matrix(btilde: &IMat, r: &[i64], k: usize, eps: Sign) -> Result<IMat> {
    let (m, n) = btilde.shape();
    check_direction(k, n)?;
    let mut e = IMat::identity(m, m);
    for i in 0..m {
        e[(i, k)] = if i == k {
            -1
        } else {
            pos(-eps.value() * btilde[(i, k)] * r[k])
        };
    }
    Ok(e)
}

/// `F_{k,ε}^{RB~}`: identity except row `k`, which holds `-1` on the
/// diagonal and `[ε r_k b_ki]_+` elsewhere.
pub fn f_matrix(btilde: &IMat, r: &[i64], k: usize, eps: Sign) -> Result<IMat> {
    let n = btilde.ncols();
    check_direction(k, n)?;
    let mut f = IMat::identity(n, n);
    for i in 0..n {
        f[(k, i)] = if i == k {
            -1
        } else {
            pos(eps.value() * r[k] * btilde[(k, i)])
        };
    }
    Ok(f)
}

/// `(E B~ F, E^T L E)`; the result is rechecked for compatibility with the
/// same `D`.
pub fn mutate_pair(pair: &CompatiblePair, r: &[i64], k: usize, eps: Sign) -> Result<CompatiblePair> {
    if r.len() != pair.n() {
        return Err(Error::Dimension("r has wrong length".into()));
    }
    let e = e_matrix(&pair.btilde, r, k, eps)?;
    let f = f_matrix(&pair.btilde, r, k, eps)?;
    let bt = &e * &pair.btilde * &f;
    let lam = e.transpose() * &pair.lambda * &e;
    let d = check_compatible(&bt, &lam)
        .map_err(|err| Error::Internal(format!("mutation broke compatibility: {err}")))?;
    if d != pair.d {
        return Err(Error::Internal("mutation changed D".into()));
    }
    Ok(CompatiblePair {
        btilde: bt,
        lambda: lam,
        d,
    })
}

/// Entrywise exchange-matrix mutation for an `m x n` matrix (`m >= n`).
pub fn mutate_exchange_classical(b: &IMat, r: &[i64], k: usize, eps: Sign) -> Result<IMat> {
    let (m, n) = b.shape();
    check_direction(k, n)?;
    if r.len() != n {
        return Err(Error::Dimension("r has wrong length".into()));
    }
    let e = eps.value();
    let mut out = b.clone();
    for i in 0..m {
        for j in 0..n {
            out[(i, j)] = if i == k || j == k {
                -b[(i, j)]
            } else {
                b[(i, j)] + r[k] * (pos(-e * b[(i, k)]) * b[(k, j)] + b[(i, k)] * pos(e * b[(k, j)]))
            };
        }
    }
    Ok(out)
}
