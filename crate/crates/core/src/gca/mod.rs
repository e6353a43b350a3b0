//! Classical generalized cluster algebras with principal coefficients:
//! exact mutation, F-polynomials by direct mutation, by the Gupta product
//! and by its expanded sum.

mod engine;
mod expansion;
mod gupta;
mod ratfun;

pub use engine::{
    f_poly_direct, f_polys_direct, mutate_cluster_variable, run_classical, separation_check_classical,
    tropical_y_step, ClassicalRun,
};
pub use expansion::{bracket_binomial, gupta_expansion, gupta_expansion_with, ExpansionLimits};
pub use gupta::{gupta_exponents, gupta_l_sequence, gupta_product, GuptaData};
pub use ratfun::{Atoms, Factored, RatFun};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{IMat, IVec};
use crate::patterns::d0_of;
use crate::poly::{render_monomial, Poly};
use crate::seedcore::{MutationData, ZEntry};

/// Exchange matrix together with classical mutation data `(r, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalSeed {
    b: IMat,
    data: MutationData,
    d0: Vec<i64>,
}

impl ClassicalSeed {
    pub fn new(b: IMat, data: MutationData) -> Result<Self> {
        if !b.is_square() || b.nrows() != data.rank() {
            return Err(Error::Dimension(format!(
                "exchange matrix is {}x{}, mutation data has rank {}",
                b.nrows(),
                b.ncols(),
                data.rank()
            )));
        }
        let d0 = d0_of(&b, &data.r_i64())?;
        Ok(Self { b, data, d0 })
    }

    pub fn n(&self) -> usize {
        self.b.nrows()
    }

    pub fn b(&self) -> &IMat {
        &self.b
    }

    pub fn data(&self) -> &MutationData {
        &self.data
    }

    pub fn r(&self) -> Vec<i64> {
        self.data.r_i64()
    }

    /// Skew-symmetrizer `D_0` of `RB`.
    pub fn d0(&self) -> &[i64] {
        &self.d0
    }

    /// Diagonal of `D_0 R`.
    pub fn d0r(&self) -> Vec<i64> {
        self.d0.iter().zip(self.r()).map(|(a, b)| a * b).collect()
    }

    pub fn symbols(&self) -> Vec<String> {
        self.data.symbols()
    }

    /// `z_{k,0..r_k}` as polynomials in the ring `y_1..y_n, symbols`,
    /// placed at variable offset `offset`.
    pub(crate) fn z_polys(&self, k: usize, nvars: usize, offset: usize) -> Vec<Poly> {
        let symbols = self.symbols();
        self.data.z()[k]
            .iter()
            .map(|e| match e {
                ZEntry::Int(v) => Poly::constant(nvars, v.clone()),
                ZEntry::Symbol(s) => {
                    let i = symbols.iter().position(|x| x == s).expect("known symbol");
                    Poly::var(nvars, offset + i)
                }
            })
            .collect()
    }
}

/// An F-polynomial in `y_1..y_n` and the formal `z` symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalFPoly {
    n: usize,
    symbols: Vec<String>,
    poly: Poly,
}

impl ClassicalFPoly {
    pub fn new(n: usize, symbols: Vec<String>, poly: Poly) -> Result<Self> {
        if poly.nvars() != n + symbols.len() {
            return Err(Error::Dimension("F-polynomial ring mismatch".into()));
        }
        Ok(Self { n, symbols, poly })
    }

    pub fn one(n: usize, symbols: Vec<String>) -> Self {
        let nv = n + symbols.len();
        Self {
            n,
            symbols,
            poly: Poly::one(nv),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// Coefficient of `y^a` as a polynomial in the symbols.
    pub fn y_coeff(&self, a: &[i64]) -> Poly {
        let s = self.symbols.len();
        let mut out = Poly::zero(s);
        for (e, c) in self.poly.terms() {
            if e[..self.n] == *a {
                out.add_term(e[self.n..].to_vec(), c.clone());
            }
        }
        out
    }

    /// Componentwise maximum of the `y`-exponents.
    pub fn max_y(&self) -> IVec {
        self.poly.max_exponents()[..self.n].to_vec()
    }

    /// Constant term is 1, no negative exponents, and the componentwise
    /// maximal `y`-monomial occurs with coefficient 1.
    pub fn structure_check(&self) -> Result<()> {
        if !self.poly.is_polynomial() {
            return Err(Error::Falsified(format!("F-polynomial has negative exponents: {self}")));
        }
        let s = self.symbols.len();
        if !self.y_coeff(&vec![0; self.n]).is_one() {
            return Err(Error::Falsified(format!("constant term is not 1: {self}")));
        }
        let top = self.max_y();
        if self.y_coeff(&top) != Poly::one(s) {
            return Err(Error::Falsified(format!(
                "maximal monomial y^{top:?} does not have coefficient 1 in {self}"
            )));
        }
        Ok(())
    }

    /// Substitutes each symbol by a polynomial in one free parameter
    /// (coefficients by degree). The result lives in `y_1..y_n, h`.
    pub fn specialize(&self, values: &std::collections::BTreeMap<String, Vec<BigInt>>) -> Result<Poly> {
        let nv = self.n + 1;
        let mut vals: Vec<Option<Poly>> = vec![None; self.n];
        let mut map: Vec<Option<usize>> = (0..self.n).map(Some).collect();
        for sym in &self.symbols {
            let coeffs = values
                .get(sym)
                .ok_or_else(|| Error::Input(format!("no value for symbol {sym}")))?;
            let p = Poly::from_terms(
                nv,
                coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(d, c)| {
                    let mut e = vec![0; nv];
                    e[self.n] = d as i64;
                    (e, c.clone())
                }),
            );
            vals.push(Some(p));
            map.push(None);
        }
        self.poly.substitute(&vals, nv, &map)
    }

    fn names(&self) -> Vec<String> {
        (1..=self.n)
            .map(|i| format!("y{i}"))
            .chain(self.symbols.iter().cloned())
            .collect()
    }

    /// Terms ordered by `y`-degree, then descending lex in `y`, then by
    /// `z`-degree and descending lex in `z`.
    fn ordered_exponents(&self) -> Vec<IVec> {
        let n = self.n;
        let mut keys: Vec<IVec> = self.poly.terms().keys().cloned().collect();
        keys.sort_by(|a, b| {
            let (ya, za) = a.split_at(n);
            let (yb, zb) = b.split_at(n);
            let da: i64 = ya.iter().sum();
            let db: i64 = yb.iter().sum();
            da.cmp(&db)
                .then_with(|| yb.cmp(ya))
                .then_with(|| za.iter().sum::<i64>().cmp(&zb.iter().sum::<i64>()))
                .then_with(|| zb.cmp(za))
        });
        keys
    }
}

impl fmt::Display for ClassicalFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.names();
        let n = self.n;
        let order = self.ordered_exponents();
        if order.is_empty() {
            return f.write_str("0");
        }
        for (i, e) in order.iter().enumerate() {
            let c = &self.poly.terms()[e];
            // Symbols first, then y.
            let zpart = render_monomial(&e[n..], &names[n..]);
            let ypart = render_monomial(&e[..n], &names[..n]);
            let mono = match (zpart.is_empty(), ypart.is_empty()) {
                (true, _) => ypart,
                (false, true) => zpart,
                (false, false) => format!("{zpart}*{ypart}"),
            };
            let neg = c < &BigInt::zero();
            let a = if neg { -c } else { c.clone() };
            let body = if mono.is_empty() {
                a.to_string()
            } else if a.is_one() {
                mono
            } else {
                format!("{a}*{mono}")
            };
            match (i, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

/// `(u, d_(j) v)_{D_0 R} = u^T (D_0 R) v / (D_0 R)_{i_j}`, required integral.
pub(crate) fn pairing(u: &[i64], d0r: &[i64], v: &[i64], ij: usize) -> Result<i64> {
    let num: i64 = u.iter().zip(d0r).zip(v).map(|((a, w), b)| a * w * b).sum();
    if num % d0r[ij] != 0 {
        return Err(Error::Integrality(format!(
            "pairing {num}/{} is not an integer",
            d0r[ij]
        )));
    }
    Ok(num / d0r[ij])
}
