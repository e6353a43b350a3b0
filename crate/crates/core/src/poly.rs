//! Sparse multivariate Laurent polynomials over `Z` in a fixed number of
//! commuting variables. Terms are keyed by exponent vector in lexicographic
//! order, which doubles as the monomial order for exact division.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IVec;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<IVec, BigInt>,
}

fn add_exp(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exp: IVec, c: BigInt) -> Self {
        let mut p = Self::zero(exp.len());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The variable with index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (IVec, BigInt)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<IVec, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i64]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, e: IVec, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^e`.
    pub fn shift(&self, e: &[i64]) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (add_exp(a, e), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if other.terms.len() == 1 {
            let (e, c) = other.terms.iter().next().unwrap();
            return self.shift(e).scale(c);
        }
        if self.terms.len() == 1 {
            return other.mul(self);
        }
        let mut acc: HashMap<IVec, BigInt> = HashMap::with_capacity(self.len() * other.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *acc.entry(add_exp(ea, eb)).or_default() += ca * cb;
            }
        }
        Self {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Componentwise minimum of exponents (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> IVec {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut m = first.clone();
        for e in it {
            for (x, y) in m.iter_mut().zip(e) {
                *x = (*x).min(*y);
            }
        }
        m
    }

    pub fn max_exponents(&self) -> IVec {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut m = first.clone();
        for e in it {
            for (x, y) in m.iter_mut().zip(e) {
                *x = (*x).max(*y);
            }
        }
        m
    }

    /// True if no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Value at an integer point; requires nonnegative exponents.
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(point).fold(c.clone(), |acc, (&k, x)| {
                    assert!(k >= 0, "eval needs a polynomial");
                    acc * num_traits::pow(x.clone(), k as usize)
                })
            })
            .sum()
    }

    /// Necessary condition for `d | self` (polynomials): divisibility of
    /// the values at a few integer points.
    pub fn may_be_divisible_by(&self, d: &Self) -> bool {
        const PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        for shift in 0..3 {
            let point: Vec<BigInt> = (0..self.nvars)
                .map(|i| BigInt::from(PRIMES[(i + 4 * shift) % PRIMES.len()] + shift as u32))
                .collect();
            let dv = d.eval(&point);
            if !dv.is_zero() && !self.eval(&point).is_multiple_of(&dv) {
                return false;
            }
        }
        true
    }

    /// Exact quotient in the Laurent ring. Fails if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::Internal("division by zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let a = self.min_exponents();
        let b = d.min_exponents();
        let na: IVec = a.iter().map(|x| -x).collect();
        let nb: IVec = b.iter().map(|x| -x).collect();
        let num = self.shift(&na);
        let den = d.shift(&nb);
        let q = num.poly_div_exact(&den)?;
        let diff: IVec = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        Ok(q.shift(&diff))
    }

    /// Exact division of polynomials (nonnegative exponents) by repeated
    /// elimination of the lex-leading term.
    fn poly_div_exact(&self, d: &Self) -> Result<Self> {
        let (lt_d, lc_d) = d.terms.iter().next_back().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((lt_r, lc_r)) = rem.terms.iter().next_back() {
            let e: IVec = lt_r.iter().zip(lt_d).map(|(x, y)| x - y).collect();
            if e.iter().any(|&x| x < 0) {
                return Err(Error::Falsified("polynomial division is not exact".into()));
            }
            let (c, r) = lc_r.div_rem(lc_d);
            if !r.is_zero() {
                return Err(Error::Falsified("polynomial division is not exact".into()));
            }
            for (ed, cd) in &d.terms {
                rem.add_term(add_exp(ed, &e), -(&c * cd));
            }
            q.add_term(e, c);
        }
        Ok(q)
    }

    /// Sets the listed variables to 1.
    pub fn set_to_one(&self, vars: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            for &v in vars {
                e[v] = 0;
            }
            out.add_term(e, c.clone());
        }
        out
    }

    /// Moves into a ring with `nvars` variables; variable `i` goes to
    /// `map[i]`, or is set to 1 when `map[i]` is `None`.
    pub fn remap(&self, nvars: usize, map: &[Option<usize>]) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; nvars];
            for (i, &x) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    f[j] += x;
                }
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Substitutes `vals[i]` for every variable `i` that has a value; the
    /// variable must occur with nonnegative exponents only.
    pub fn substitute(&self, vals: &[Option<Poly>], nvars: usize, map: &[Option<usize>]) -> Result<Self> {
        let mut out = Self::zero(nvars);
        let mut cache: HashMap<(usize, i64), Poly> = HashMap::new();
        for (e, c) in &self.terms {
            let mut term = Poly::constant(nvars, c.clone());
            let mut mono = vec![0; nvars];
            for (i, &x) in e.iter().enumerate() {
                match (&vals[i], map[i]) {
                    (Some(v), _) => {
                        if x < 0 {
                            return Err(Error::Internal(
                                "substituting into a negative power".into(),
                            ));
                        }
                        if x > 0 {
                            let p = cache
                                .entry((i, x))
                                .or_insert_with(|| v.pow(x as u32))
                                .clone();
                            term = term.mul(&p);
                        }
                    }
                    (None, Some(j)) => mono[j] += x,
                    (None, None) => {}
                }
            }
            out = out.add(&term.shift(&mono));
        }
        Ok(out)
    }

    /// Total degree restricted to the listed variables, over all terms.
    pub fn max_degree_in(&self, vars: &[usize]) -> i64 {
        self.terms
            .keys()
            .map(|e| vars.iter().map(|&v| e[v]).sum::<i64>())
            .max()
            .unwrap_or(0)
    }

    /// Renders with the given variable names and an explicit term order.
    pub fn render(&self, names: &[String], order: &[IVec]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, e) in order.iter().enumerate() {
            let c = &self.terms[e];
            let mono = render_monomial(e, names);
            let a = c.abs();
            let body = match (mono.is_empty(), a.is_one()) {
                (true, _) => a.to_string(),
                (false, true) => mono,
                (false, false) => format!("{a}*{mono}"),
            };
            match (i, c.is_negative()) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

pub fn render_monomial(e: &[i64], names: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(names)
        .filter(|(x, _)| **x != 0)
        .map(|(x, n)| {
            if *x == 1 {
                n.clone()
            } else if *x > 0 {
                format!("{n}^{x}")
            } else {
                format!("{n}^({x})")
            }
        })
        .collect();
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("v{i}")).collect();
        let order: Vec<IVec> = self.terms.keys().cloned().collect();
        f.write_str(&self.render(&names, &order))
    }
}

/// Generalized binomial coefficient `C(h, k)` for any integer `h`.
pub fn binomial(h: i64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(h) - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Multinomial coefficient `n! / (k_1! ... k_l!)` with `n = Σ k_i`.
pub fn multinomial(parts: &[u64]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total = 0i64;
    for &p in parts {
        total += p as i64;
        acc *= binomial(total, p);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, ts: &[(&[i64], i64)]) -> Poly {
        Poly::from_terms(n, ts.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))))
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = p(2, &[(&[0, 0], 1), (&[1, 0], 2), (&[1, 1], 1)]);
        let b = p(2, &[(&[0, 0], 1), (&[0, 2], -3), (&[2, 1], 1)]);
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
    }

    #[test]
    fn laurent_division() {
        let x = Poly::var(2, 0);
        let num = p(2, &[(&[-1, 0], 1), (&[0, 1], 1)]);
        let q = num.mul(&x).exact_div(&x).unwrap();
        assert_eq!(q, num);
        let d = p(2, &[(&[0, 0], 1), (&[1, 0], 1)]);
        assert!(matches!(x.exact_div(&d), Err(Error::Falsified(_))));
    }

    #[test]
    fn coefficient_divisibility() {
        let a = p(1, &[(&[1], 3), (&[0], 1)]);
        let b = p(1, &[(&[1], 2)]);
        assert!(a.exact_div(&b).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-1, 3), BigInt::from(-1));
        assert_eq!(binomial(-2, 2), BigInt::from(3));
        assert_eq!(binomial(2, 3), BigInt::from(0));
        assert_eq!(binomial(-3, 0), BigInt::from(1));
        assert_eq!(multinomial(&[1, 2, 1]), BigInt::from(12));
    }

    #[test]
    fn substitution() {
        // (a + b^2) with a := 1 + c
        let f = p(3, &[(&[1, 0, 0], 1), (&[0, 2, 0], 1)]);
        let vals = vec![Some(p(2, &[(&[0, 0], 1), (&[0, 1], 1)])), None, None];
        let g = f.substitute(&vals, 2, &[None, Some(0), None]).unwrap();
        assert_eq!(g, p(2, &[(&[0, 0], 1), (&[0, 1], 1), (&[2, 0], 1)]));
    }
}
