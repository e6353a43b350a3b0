use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::IVec;
use crate::poly::Poly;

/// Table of polynomial atoms `N_1, N_2, ...` shared by factored products,
/// with a cache of their powers.
#[derive(Clone, Debug)]
pub struct Atoms {
    nvars: usize,
    polys: Vec<Poly>,
    cache: HashMap<(usize, u32), Poly>,
}

impl Atoms {
    pub fn new(nvars: usize) -> Self {
        Self {
            nvars,
            polys: Vec::new(),
            cache: HashMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn push(&mut self, p: Poly) -> usize {
        assert_eq!(p.nvars(), self.nvars);
        self.polys.push(p);
        self.polys.len() - 1
    }

    /// Registers `p` (a polynomial) after dividing out a monomial and every
    /// existing non-constant atom that divides it. Returns `p` in factored
    /// form; a new atom is added only for a nontrivial cofactor.
    pub fn push_reduced(&mut self, p: Poly) -> Factored {
        let mono = p.min_exponents();
        let mut rest = p.shift(&mono.iter().map(|x| -x).collect::<Vec<_>>());
        let mut exps = vec![0i64; self.polys.len()];
        for (i, a) in self.polys.iter().enumerate() {
            if a.max_exponents().iter().all(|&x| x == 0) {
                continue;
            }
            while rest.may_be_divisible_by(a) {
                match rest.exact_div(a) {
                    Ok(q) => {
                        rest = q;
                        exps[i] += 1;
                    }
                    Err(_) => break,
                }
            }
        }
        if !rest.is_one() {
            exps.push(1);
            self.push(rest);
        }
        Factored { mono, exps }
    }

    pub fn get(&self, i: usize) -> &Poly {
        &self.polys[i]
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn power(&mut self, i: usize, e: u32) -> Poly {
        if e == 0 {
            return Poly::one(self.nvars);
        }
        if e == 1 {
            return self.polys[i].clone();
        }
        if let Some(p) = self.cache.get(&(i, e)) {
            return p.clone();
        }
        let p = self.polys[i].pow(e);
        self.cache.insert((i, e), p.clone());
        p
    }

    /// `Π_i N_i^{e_i}` for nonnegative `e_i`.
    pub fn product(&mut self, exps: &[i64]) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for (i, &e) in exps.iter().enumerate() {
            debug_assert!(e >= 0);
            if e > 0 {
                acc = acc.mul(&self.power(i, e as u32));
            }
        }
        acc
    }
}

/// `x^mono · Π_i N_i^{exps_i}` with integer (possibly negative) exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub mono: IVec,
    pub exps: Vec<i64>,
}

impl Factored {
    pub fn one(nvars: usize) -> Self {
        Self {
            mono: vec![0; nvars],
            exps: Vec::new(),
        }
    }

    pub fn atom(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; i + 1];
        exps[i] = 1;
        Self {
            mono: vec![0; nvars],
            exps,
        }
    }

    pub fn monomial(mono: IVec) -> Self {
        Self {
            mono,
            exps: Vec::new(),
        }
    }

    pub fn exp(&self, i: usize) -> i64 {
        self.exps.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.exps.len().max(other.exps.len());
        Self {
            mono: self.mono.iter().zip(&other.mono).map(|(a, b)| a + b).collect(),
            exps: (0..len).map(|i| self.exp(i) + other.exp(i)).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        Self {
            mono: self.mono.iter().map(|a| a * e).collect(),
            exps: self.exps.iter().map(|a| a * e).collect(),
        }
    }

    /// Splits into numerator and denominator polynomials.
    pub fn expand(&self, atoms: &mut Atoms) -> RatFun {
        let pos: Vec<i64> = self.exps.iter().map(|&e| e.max(0)).collect();
        let neg: Vec<i64> = self.exps.iter().map(|&e| (-e).max(0)).collect();
        let mp: IVec = self.mono.iter().map(|&e| e.max(0)).collect();
        let mn: IVec = self.mono.iter().map(|&e| (-e).max(0)).collect();
        RatFun {
            num: atoms.product(&pos).shift(&mp),
            den: atoms.product(&neg).shift(&mn),
        }
    }
}

/// A quotient of polynomials, reduced only on demand.
#[derive(Clone, Debug)]
pub struct RatFun {
    pub num: Poly,
    pub den: Poly,
}

impl RatFun {
    pub fn from_poly(p: Poly) -> Self {
        let nv = p.nvars();
        Self {
            num: p,
            den: Poly::one(nv),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    /// Equality as rational functions.
    pub fn equals(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// The quotient, which must be a Laurent polynomial.
    pub fn to_laurent(&self) -> Result<Poly> {
        if self.den.is_one() {
            return Ok(self.num.clone());
        }
        self.num.exact_div(&self.den)
    }

    /// The quotient, which must be a polynomial.
    pub fn to_polynomial(&self) -> Result<Poly> {
        let p = self.to_laurent()?;
        if !p.is_polynomial() {
            return Err(Error::Falsified("quotient has negative exponents".into()));
        }
        Ok(p)
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        Self::from_poly(Poly::constant(nvars, BigInt::from(c)))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::constant(nvars, BigInt::one()))
    }
}
