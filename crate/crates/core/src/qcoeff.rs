//! Exact scalars for quantum computations: the ring `Z[q^(±1/2)]`, optionally
//! extended by one commuting parameter `h` so that symbolic mutation data
//! (such as `h(q^(1/2))` in a rank-2 exchange polynomial) can be carried
//! through a computation verbatim.
//!
//! Exponents of `q` are stored as integer counts of `q^(1/2)`, so `q^(3/2)`
//! has stored exponent 3.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent pair of a scalar monomial `q^(half/2) * h^param`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QMono {
    pub half: i32,
    pub param: u32,
}

/// Element of `Z[q^(±1/2)][h]` in canonical sparse form: terms sorted by
/// `(half, param)`, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QCoeff {
    terms: Vec<(QMono, BigInt)>,
}

impl QCoeff {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c * q^(half/2) * h^param`.
    pub fn monomial<T: Into<BigInt>>(half: i32, param: u32, c: T) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: vec![(QMono { half, param }, c)],
        }
    }

    /// `q^(half/2)`.
    pub fn q_half_pow(half: i32) -> Self {
        Self::monomial(half, 0, 1)
    }

    /// The free parameter `h`.
    pub fn param() -> Self {
        Self::monomial(0, 1, 1)
    }

    /// Builds a canonical value from arbitrary (possibly repeated, possibly
    /// zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (QMono, BigInt)>>(terms: I) -> Self {
        let mut v: Vec<(QMono, BigInt)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(QMono, BigInt)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(QMono, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].0 == QMono { half: 0, param: 0 }
            && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if any term involves the parameter `h`.
    pub fn has_param(&self) -> bool {
        self.terms.iter().any(|(m, _)| m.param > 0)
    }

    /// Multiplies by `q^(half/2)` without a full convolution.
    pub fn shift_q(&self, half: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        QMono {
                            half: m.half + half,
                            param: m.param,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value at `q^(1/2) = 1` with the parameter also set to 1: the sum of
    /// all integer coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Value at `q^(1/2) = 1` as a polynomial in the parameter, indexed by
    /// degree.
    pub fn at_q_one(&self) -> Vec<BigInt> {
        let deg = self.terms.iter().map(|(m, _)| m.param).max();
        let Some(deg) = deg else {
            return Vec::new();
        };
        let mut out = vec![BigInt::zero(); deg as usize + 1];
        for (m, c) in &self.terms {
            out[m.param as usize] += c;
        }
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }

    /// Inverse of a unit `±q^(k/2)`; `None` for anything else.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = &self.terms[0];
        if m.param != 0 || c.abs() != BigInt::one() {
            return None;
        }
        Some(Self::monomial(-m.half, 0, c.clone()))
    }

    fn combine(&self, other: &Self, sign: i8) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Greater
            } else if j == b.len() {
                Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if sign < 0 { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign < 0 {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self { terms: out }
    }
}

impl From<i64> for QCoeff {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl<'a> Add<&'a QCoeff> for &'a QCoeff {
    type Output = QCoeff;
    fn add(self, rhs: &QCoeff) -> QCoeff {
        self.combine(rhs, 1)
    }
}

impl Add for QCoeff {
    type Output = QCoeff;
    fn add(self, rhs: QCoeff) -> QCoeff {
        self.combine(&rhs, 1)
    }
}

impl AddAssign<&QCoeff> for QCoeff {
    fn add_assign(&mut self, rhs: &QCoeff) {
        *self = self.combine(rhs, 1);
    }
}

impl<'a> Sub<&'a QCoeff> for &'a QCoeff {
    type Output = QCoeff;
    fn sub(self, rhs: &QCoeff) -> QCoeff {
        self.combine(rhs, -1)
    }
}

impl Sub for QCoeff {
    type Output = QCoeff;
    fn sub(self, rhs: QCoeff) -> QCoeff {
        self.combine(&rhs, -1)
    }
}

impl Neg for &QCoeff {
    type Output = QCoeff;
    fn neg(self) -> QCoeff {
        QCoeff {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for QCoeff {
    type Output = QCoeff;
    fn neg(self) -> QCoeff {
        -&self
    }
}

impl<'a> Mul<&'a QCoeff> for &'a QCoeff {
    type Output = QCoeff;
    fn mul(self, rhs: &QCoeff) -> QCoeff {
        if self.is_zero() || rhs.is_zero() {
            return QCoeff::zero();
        }
        if rhs.terms.len() == 1 && rhs.terms[0].0.param == 0 {
            let (m, c) = &rhs.terms[0];
            return QCoeff {
                terms: self
                    .terms
                    .iter()
                    .map(|(a, x)| {
                        (
                            QMono {
                                half: a.half + m.half,
                                param: a.param,
                            },
                            x * c,
                        )
                    })
                    .collect(),
            };
        }
        let mut prod = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                prod.push((
                    QMono {
                        half: a.half + b.half,
                        param: a.param + b.param,
                    },
                    x * y,
                ));
            }
        }
        QCoeff::from_terms(prod)
    }
}

impl Mul for QCoeff {
    type Output = QCoeff;
    fn mul(self, rhs: QCoeff) -> QCoeff {
        &self * &rhs
    }
}

fn fmt_q(half: i32) -> Option<String> {
    match half {
        0 => None,
        2 => Some("q".to_string()),
        h if h % 2 == 0 && h > 0 => Some(format!("q^{}", h / 2)),
        h if h % 2 == 0 => Some(format!("q^({})", h / 2)),
        h => Some(format!("q^({h}/2)")),
    }
}

fn fmt_param(param: u32) -> Option<String> {
    match param {
        0 => None,
        1 => Some("h".to_string()),
        p => Some(format!("h^{p}")),
    }
}

/// Writes `|c| * h^p * q^e` without sign; returns true if anything but the
/// bare integer was written.
fn fmt_abs_term(m: &QMono, c: &BigInt) -> String {
    let factors: Vec<String> = fmt_param(m.param)
        .into_iter()
        .chain(fmt_q(m.half))
        .collect();
    let a = c.abs();
    if factors.is_empty() {
        a.to_string()
    } else if a.is_one() {
        factors.join("*")
    } else {
        format!("{}*{}", a, factors.join("*"))
    }
}

impl fmt::Display for QCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let body = fmt_abs_term(m, c);
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl QCoeff {
    /// True if the canonical text needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        self.terms.len() > 1
    }

    /// Renders as a multiplicative prefix for `body`, e.g. `q^(1/2)*Z1`,
    /// `(1 + q)*Z1`, or just `Z1` for the unit coefficient. Returns the sign
    /// separately so callers can join terms with ` + ` / ` - `.
    pub fn render_prefix(&self, body: &str) -> (bool, String) {
        if body.is_empty() {
            let s = self.to_string();
            return match s.strip_prefix('-') {
                Some(rest) if !self.is_compound() => (true, rest.to_string()),
                _ => (false, s),
            };
        }
        if self.is_compound() {
            return (false, format!("({self})*{body}"));
        }
        let (m, c) = &self.terms[0];
        let neg = c.is_negative();
        if m.half == 0 && m.param == 0 && c.abs().is_one() {
            return (neg, body.to_string());
        }
        (neg, format!("{}*{}", fmt_abs_term(m, c), body))
    }
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim()
        .parse::<i64>()
        .map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

/// Parses an exponent `k`, `(k)` or `(k/2)` into half units.
fn parse_q_exponent(s: &str) -> Result<i32> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(s);
    if let Some((num, den)) = inner.split_once('/') {
        if den.trim() != "2" {
            return Err(Error::Parse(format!(
                "q exponent denominator must be 2, got `{s}`"
            )));
        }
        Ok(parse_int(num)? as i32)
    } else {
        Ok(2 * parse_int(inner)? as i32)
    }
}

fn parse_term(s: &str) -> Result<(QMono, BigInt)> {
    let mut coeff = BigInt::one();
    let mut mono = QMono { half: 0, param: 0 };
    for factor in s.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{s}`")));
        }
        if let Some(rest) = factor.strip_prefix('q') {
            let half = match rest.strip_prefix('^') {
                Some(e) => parse_q_exponent(e)?,
                None if rest.is_empty() => 2,
                None => return Err(Error::Parse(format!("bad factor `{factor}`"))),
            };
            mono.half += half;
        } else if let Some(rest) = factor.strip_prefix('h') {
            let p = match rest.strip_prefix('^') {
                Some(e) => parse_int(e)?,
                None if rest.is_empty() => 1,
                None => return Err(Error::Parse(format!("bad factor `{factor}`"))),
            };
            if p < 0 {
                return Err(Error::Parse("negative power of h".into()));
            }
            mono.param += p as u32;
        } else {
            let c: BigInt = factor
                .parse()
                .map_err(|_| Error::Parse(format!("bad factor `{factor}`")))?;
            coeff *= c;
        }
    }
    Ok((mono, coeff))
}

impl FromStr for QCoeff {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty coefficient".into()));
        }
        // Split on top-level + and -, ignoring signs inside parentheses.
        let mut pieces: Vec<(i8, &str)> = Vec::new();
        let mut depth = 0i32;
        let mut start = 0usize;
        let mut sign = 1i8;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 => {
                    let piece = s[start..i].trim();
                    if piece.is_empty() {
                        if i != 0 {
                            return Err(Error::Parse(format!("dangling sign in `{s}`")));
                        }
                    } else {
                        pieces.push((sign, piece));
                    }
                    sign = if ch == '-' { -1 } else { 1 };
                    start = i + 1;
                }
                _ => {}
            }
        }
        let last = s[start..].trim();
        if last.is_empty() {
            return Err(Error::Parse(format!("dangling sign in `{s}`")));
        }
        pieces.push((sign, last));
        let mut terms = Vec::with_capacity(pieces.len());
        for (sign, piece) in pieces {
            let (m, c) = parse_term(piece)?;
            terms.push((m, if sign < 0 { -c } else { c }));
        }
        Ok(QCoeff::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qc(s: &str) -> QCoeff {
        s.parse().unwrap()
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        assert!((&QCoeff::q_half_pow(1) * &QCoeff::q_half_pow(-1)).is_one());
    }

    #[test]
    fn difference_of_squares() {
        let a = qc("1 + q^(1/2)");
        let b = qc("1 - q^(1/2)");
        assert_eq!(&a * &b, qc("1 - q"));
    }

    #[test]
    fn zero_absorbs() {
        let z = QCoeff::zero();
        let x = QCoeff::monomial(-3, 0, 3);
        assert!((&z * &x).is_zero());
    }

    #[test]
    fn evaluation_at_one() {
        assert_eq!(qc("1 + q^(1/2) + q").eval_at_one(), BigInt::from(3));
        assert_eq!(qc("q^(-3/2)").eval_at_one(), BigInt::from(1));
        assert_eq!(qc("2 - q^(1/2)").eval_at_one(), BigInt::from(1));
    }

    #[test]
    fn canonical_text() {
        let a = &(&QCoeff::one() + &QCoeff::monomial(1, 0, 2)) - &QCoeff::q_half_pow(6);
        assert_eq!(a.to_string(), "1 + 2*q^(1/2) - q^3");
        assert_eq!(qc("q^(-1)").to_string(), "q^(-1)");
        assert_eq!(qc("q^(-3/2)*h").to_string(), "h*q^(-3/2)");
        assert_eq!(QCoeff::zero().to_string(), "0");
        assert_eq!(qc("-q").to_string(), "-q");
    }

    #[test]
    fn param_survives_q_one() {
        let a = qc("h*q^(1/2) + h*q^(-1/2) + 2 + h^2");
        assert_eq!(
            a.at_q_one(),
            vec![BigInt::from(2), BigInt::from(2), BigInt::from(1)]
        );
    }

    #[test]
    fn unit_inverse_only_for_signed_powers() {
        assert_eq!(qc("-q^(3/2)").unit_inverse(), Some(qc("-q^(-3/2)")));
        assert_eq!(qc("2").unit_inverse(), None);
        assert_eq!(qc("1 + q").unit_inverse(), None);
        assert_eq!(qc("h").unit_inverse(), None);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("q^(1/3)".parse::<QCoeff>().is_err());
        assert!("1 + ".parse::<QCoeff>().is_err());
        assert!("x".parse::<QCoeff>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_qcoeff() -> impl Strategy<Value = QCoeff> {
            prop::collection::vec((-6i32..6, 0u32..3, -5i64..6), 0..6).prop_map(|ts| {
                QCoeff::from_terms(
                    ts.into_iter()
                        .map(|(h, p, c)| (QMono { half: h, param: p }, BigInt::from(c))),
                )
            })
        }

        proptest! {
            #[test]
            fn eval_at_one_is_multiplicative(a in arb_qcoeff(), b in arb_qcoeff()) {
                prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
            }

            #[test]
            fn text_round_trips(a in arb_qcoeff()) {
                let back: QCoeff = a.to_string().parse().unwrap();
                prop_assert_eq!(back, a);
            }

            #[test]
            fn ring_axioms(a in arb_qcoeff(), b in arb_qcoeff(), c in arb_qcoeff()) {
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            }
        }
    }
}
