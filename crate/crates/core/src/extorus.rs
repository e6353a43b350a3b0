//! Quantum tori and truncated q-commuting power series.
//!
//! A [`TorusElem`] is a finite sum of `c * X(a)` with multiplication
//! `X(a) X(b) = q^(a^T L b / 2) X(a + b)` for a skew-symmetric integer
//! matrix `L`. Twist exponents are tracked in half units, so the stored
//! shift for that product is exactly `a^T L b`.
//!
//! A [`QSeries`] is a torus element supported in the nonnegative orthant
//! with every term of total degree above a bound discarded.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::matrix::{diag_times, is_skew, IMat, IVec};
use crate::qcoeff::QCoeff;

/// Skew-symmetric integer bilinear form on `Z^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewForm {
    matrix: IMat,
}

impl SkewForm {
    pub fn new(matrix: IMat) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::Dimension("form must be a nonempty square matrix".into()));
        }
        if !is_skew(&matrix) {
            return Err(Error::Incompatible("form matrix is not skew-symmetric".into()));
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &IMat {
        &self.matrix
    }

    /// `a^T L b`.
    pub fn pair(&self, a: &[i64], b: &[i64]) -> i64 {
        let m = self.dim();
        let mut acc = 0;
        for i in 0..m {
            if a[i] == 0 {
                continue;
            }
            let mut row = 0;
            for j in 0..m {
                row += self.matrix[(i, j)] * b[j];
            }
            acc += a[i] * row;
        }
        acc
    }

    /// The form `DB` of the `Y-hat` torus; `D` may be rational as long as
    /// the product is integral.
    pub fn yhat(d: &[Rational64], b: &IMat) -> Result<Self> {
        Self::new(diag_times(d, b)?)
    }
}

/// Element of the quantum torus attached to a [`SkewForm`].
#[derive(Clone, Debug)]
pub struct TorusElem {
    form: Arc<SkewForm>,
    terms: BTreeMap<IVec, QCoeff>,
}

impl PartialEq for TorusElem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.form, &other.form) || self.form == other.form)
            && self.terms == other.terms
    }
}

impl Eq for TorusElem {}

impl TorusElem {
    pub fn zero(form: Arc<SkewForm>) -> Self {
        Self {
            form,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(form: Arc<SkewForm>) -> Self {
        let m = form.dim();
        Self::monomial(form, vec![0; m], QCoeff::one())
    }

    /// `c * X(a)`.
    pub fn monomial(form: Arc<SkewForm>, a: IVec, c: QCoeff) -> Self {
        let mut terms = BTreeMap::new();
        assert_eq!(a.len(), form.dim(), "exponent length must match form");
        if !c.is_zero() {
            terms.insert(a, c);
        }
        Self { form, terms }
    }

    /// `X(a)`.
    pub fn x(form: Arc<SkewForm>, a: IVec) -> Self {
        Self::monomial(form, a, QCoeff::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (IVec, QCoeff)>>(
        form: Arc<SkewForm>,
        terms: I,
    ) -> Result<Self> {
        let mut out = Self::zero(form);
        for (a, c) in terms {
            if a.len() != out.form.dim() {
                return Err(Error::Dimension(format!(
                    "exponent of length {} in a rank-{} torus",
                    a.len(),
                    out.form.dim()
                )));
            }
            out.add_term(a, &c);
        }
        Ok(out)
    }

    pub fn form(&self) -> &Arc<SkewForm> {
        &self.form
    }

    pub fn terms(&self) -> &BTreeMap<IVec, QCoeff> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &[i64]) -> QCoeff {
        self.terms.get(a).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, a: IVec, c: &QCoeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&a) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&a);
                }
            }
            None => {
                self.terms.insert(a, c.clone());
            }
        }
    }

    fn check_form(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.form, &other.form) || self.form == other.form {
            Ok(())
        } else {
            Err(Error::Dimension("torus elements over different forms".into()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_form(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_form(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), &-c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QCoeff) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(a, x)| (a.clone(), x * c))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Self {
            form: self.form.clone(),
            terms,
        }
    }

    /// Twisted product; see [`torus_mul`].
    pub fn mul(&self, other: &Self) -> Result<Self> {
        torus_mul(self, other)
    }

    /// Specialization `q^(1/2) = 1` (and the parameter to 1): a commutative
    /// Laurent polynomial keyed by exponent vector.
    pub fn at_one(&self) -> BTreeMap<IVec, BigInt> {
        let mut out = BTreeMap::new();
        for (a, c) in &self.terms {
            let v = c.eval_at_one();
            if v != BigInt::from(0) {
                out.insert(a.clone(), v);
            }
        }
        out
    }

    /// Reinterprets the terms over another form of the same rank.
    pub fn with_form(&self, form: Arc<SkewForm>) -> Result<Self> {
        if form.dim() != self.form.dim() {
            return Err(Error::Dimension("rank mismatch in change of form".into()));
        }
        Ok(Self {
            form,
            terms: self.terms.clone(),
        })
    }
}

/// Bilinear extension of `X(a) X(b) = q^(a^T L b / 2) X(a + b)`.
pub fn torus_mul(a: &TorusElem, b: &TorusElem) -> Result<TorusElem> {
    a.check_form(b)?;
    let form = &a.form;
    let mut acc: HashMap<IVec, QCoeff> = HashMap::new();
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            let twist = form.pair(ea, eb);
            let sum: IVec = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let c = (ca * cb).shift_q(twist as i32);
            let slot = acc.entry(sum).or_default();
            *slot += &c;
        }
    }
    let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    Ok(TorusElem {
        form: form.clone(),
        terms,
    })
}

/// Product in the `Y-hat` torus with form `DB`. Fails if `DB` has a
/// non-integral entry, since every twist must be a whole number of
/// half-powers of `q`.
pub fn yhat_mul(a: &TorusElem, b: &TorusElem, d: &[Rational64], bmat: &IMat) -> Result<TorusElem> {
    let form = Arc::new(SkewForm::yhat(d, bmat)?);
    let a = a.with_form(form.clone())?;
    let b = b.with_form(form)?;
    torus_mul(&a, &b)
}

impl fmt::Display for TorusElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let idx: Vec<String> = a.iter().map(i64::to_string).collect();
            if c.is_compound() {
                write!(f, "({c}) * X({})", idx.join(","))?;
            } else {
                write!(f, "{c} * X({})", idx.join(","))?;
            }
        }
        Ok(())
    }
}

fn degree(a: &[i64]) -> i64 {
    a.iter().sum()
}

/// Truncated series in the nonnegative orthant of a quantum torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    elem: TorusElem,
    bound: u32,
}

impl QSeries {
    /// Wraps a torus element, discarding terms above `bound`. Fails on
    /// negative exponents.
    pub fn new(elem: TorusElem, bound: u32) -> Result<Self> {
        if let Some(a) = elem.terms.keys().find(|a| a.iter().any(|&x| x < 0)) {
            return Err(Error::Dimension(format!(
                "series term {a:?} lies outside the nonnegative orthant"
            )));
        }
        let mut elem = elem;
        elem.terms.retain(|a, _| degree(a) <= bound as i64);
        Ok(Self { elem, bound })
    }

    pub fn one(form: Arc<SkewForm>, bound: u32) -> Self {
        Self {
            elem: TorusElem::one(form),
            bound,
        }
    }

    pub fn zero(form: Arc<SkewForm>, bound: u32) -> Self {
        Self {
            elem: TorusElem::zero(form),
            bound,
        }
    }

    /// `c * Z(a)`, truncated.
    pub fn monomial(form: Arc<SkewForm>, a: IVec, c: QCoeff, bound: u32) -> Result<Self> {
        Self::new(TorusElem::monomial(form, a, c), bound)
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn elem(&self) -> &TorusElem {
        &self.elem
    }

    pub fn into_elem(self) -> TorusElem {
        self.elem
    }

    pub fn form(&self) -> &Arc<SkewForm> {
        self.elem.form()
    }

    pub fn terms(&self) -> &BTreeMap<IVec, QCoeff> {
        &self.elem.terms
    }

    pub fn constant_term(&self) -> QCoeff {
        let m = self.elem.form.dim();
        self.elem.coeff(&vec![0; m])
    }

    /// Largest total degree present.
    pub fn top_degree(&self) -> Option<i64> {
        self.elem.terms.keys().map(|a| degree(a)).max()
    }

    fn common_bound(&self, other: &Self) -> u32 {
        self.bound.min(other.bound)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::new(self.elem.add(&other.elem)?, self.common_bound(other))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::new(self.elem.sub(&other.elem)?, self.common_bound(other))
    }

    pub fn scale(&self, c: &QCoeff) -> Self {
        Self {
            elem: self.elem.scale(c),
            bound: self.bound,
        }
    }

    /// Multiplies every coefficient by `q^(half/2)`.
    pub fn shift_q(&self, half: i64) -> Self {
        self.scale(&QCoeff::q_half_pow(half as i32))
    }

    /// Truncated twisted product; pairs whose degree exceeds the bound are
    /// never formed.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.elem.check_form(&other.elem)?;
        let bound = self.common_bound(other) as i64;
        let form = self.elem.form.clone();
        let mut rhs: Vec<(&IVec, &QCoeff, i64)> = other
            .elem
            .terms
            .iter()
            .map(|(a, c)| (a, c, degree(a)))
            .collect();
        rhs.sort_by_key(|t| t.2);
        let mut acc: HashMap<IVec, QCoeff> = HashMap::new();
        for (ea, ca) in &self.elem.terms {
            let da = degree(ea);
            for (eb, cb, db) in &rhs {
                if da + db > bound {
                    break;
                }
                let twist = form.pair(ea, eb);
                let sum: IVec = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let c = (ca * *cb).shift_q(twist as i32);
                *acc.entry(sum).or_default() += &c;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(Self {
            elem: TorusElem { form, terms },
            bound: bound as u32,
        })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.form().clone(), self.bound);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Restricts to terms of total degree at most `bound`.
    pub fn truncate(&self, bound: u32) -> Self {
        let mut elem = self.elem.clone();
        elem.terms.retain(|a, _| degree(a) <= bound as i64);
        Self {
            elem,
            bound: bound.min(self.bound),
        }
    }
}

/// Two-sided inverse of a series whose constant term is a unit `±q^(k/2)`,
/// computed degree by degree up to the bound.
pub fn series_inverse(a: &QSeries) -> Result<QSeries> {
    let c0 = a.constant_term();
    let u = c0.unit_inverse().ok_or_else(|| {
        Error::Inversion(format!("constant term `{c0}` is not a unit"))
    })?;
    let n = a.bound as usize;
    let form = a.form().clone();
    let m = form.dim();
    let mut graded: Vec<Vec<(&IVec, &QCoeff)>> = vec![Vec::new(); n + 1];
    for (e, c) in &a.elem.terms {
        let d = degree(e) as usize;
        if d > 0 {
            graded[d].push((e, c));
        }
    }
    let mut b: Vec<Vec<(IVec, QCoeff)>> = vec![Vec::new(); n + 1];
    b[0].push((vec![0; m], u.clone()));
    let neg_u = -&u;
    for d in 1..=n {
        let mut acc: HashMap<IVec, QCoeff> = HashMap::new();
        for i in 1..=d {
            for (ea, ca) in &graded[i] {
                for (eb, cb) in &b[d - i] {
                    let twist = form.pair(ea, eb);
                    let sum: IVec = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                    let c = (*ca * cb).shift_q(twist as i32);
                    *acc.entry(sum).or_default() += &c;
                }
            }
        }
        let mut layer: Vec<(IVec, QCoeff)> = acc
            .into_iter()
            .map(|(e, c)| (e, &neg_u * &c))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        layer.sort_by(|x, y| x.0.cmp(&y.0));
        b[d] = layer;
    }
    let terms = b.into_iter().flatten().collect();
    Ok(QSeries {
        elem: TorusElem { form, terms },
        bound: a.bound,
    })
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(deg > {})", self.elem, self.bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::from_rows;

    fn std_form() -> Arc<SkewForm> {
        Arc::new(SkewForm::new(from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap()).unwrap())
    }

    fn qc(s: &str) -> QCoeff {
        s.parse().unwrap()
    }

    #[test]
    fn basic_twists() {
        let f = std_form();
        let e1 = TorusElem::x(f.clone(), vec![1, 0]);
        let e2 = TorusElem::x(f.clone(), vec![0, 1]);
        assert_eq!(
            torus_mul(&e1, &e2).unwrap(),
            TorusElem::monomial(f.clone(), vec![1, 1], qc("q^(1/2)"))
        );
        assert_eq!(
            torus_mul(&e2, &e1).unwrap(),
            TorusElem::monomial(f.clone(), vec![1, 1], qc("q^(-1/2)"))
        );
    }

    #[test]
    fn square_of_sum() {
        let f = std_form();
        let s = TorusElem::x(f.clone(), vec![1, 0])
            .add(&TorusElem::x(f.clone(), vec![0, 1]))
            .unwrap();
        let sq = torus_mul(&s, &s).unwrap();
        let expect = TorusElem::from_terms(
            f,
            [
                (vec![2, 0], QCoeff::one()),
                (vec![1, 1], qc("q^(1/2) + q^(-1/2)")),
                (vec![0, 2], QCoeff::one()),
            ],
        )
        .unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn form_mismatch_is_an_error() {
        let f = std_form();
        let g = Arc::new(SkewForm::new(from_rows(&[vec![0, 2], vec![-2, 0]]).unwrap()).unwrap());
        let a = TorusElem::x(f, vec![1, 0]);
        let b = TorusElem::x(g, vec![1, 0]);
        assert!(matches!(torus_mul(&a, &b), Err(Error::Dimension(_))));
    }

    #[test]
    fn yhat_products() {
        let b = from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let one = Rational64::from_integer(1);
        let d = [one, one];
        let f = std_form();
        let y1 = TorusElem::x(f.clone(), vec![1, 0]);
        let y2 = TorusElem::x(f.clone(), vec![0, 1]);
        let p = yhat_mul(&y1, &y2, &d, &b).unwrap();
        assert_eq!(p.coeff(&[1, 1]), qc("q^(1/2)"));
        let p = yhat_mul(&y2, &y1, &d, &b).unwrap();
        assert_eq!(p.coeff(&[1, 1]), qc("q^(-1/2)"));
        let sq = yhat_mul(&y1, &y1, &d, &b).unwrap();
        assert_eq!(sq.coeff(&[2, 0]), QCoeff::one());
        // Y1 Y2 = q Y2 Y1
        let a = yhat_mul(&y1, &y2, &d, &b).unwrap();
        let c = yhat_mul(&y2, &y1, &d, &b).unwrap().scale(&qc("q"));
        assert_eq!(a.terms(), c.terms());
    }

    #[test]
    fn yhat_rejects_half_integral_twist() {
        let b = from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let d = [Rational64::new(1, 2), Rational64::from_integer(1)];
        let f = std_form();
        let y = TorusElem::x(f, vec![1, 0]);
        assert!(matches!(yhat_mul(&y, &y, &d, &b), Err(Error::Integrality(_))));
    }

    #[test]
    fn geometric_inverse() {
        let f = std_form();
        let a = QSeries::new(
            TorusElem::from_terms(f.clone(), [(vec![0, 0], QCoeff::one()), (vec![1, 0], QCoeff::one())])
                .unwrap(),
            3,
        )
        .unwrap();
        let inv = series_inverse(&a).unwrap();
        let expect = TorusElem::from_terms(
            f.clone(),
            [
                (vec![0, 0], QCoeff::one()),
                (vec![1, 0], QCoeff::from_int(-1)),
                (vec![2, 0], QCoeff::one()),
                (vec![3, 0], QCoeff::from_int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(inv.elem(), &expect);
        let one = QSeries::one(f, 5);
        assert_eq!(series_inverse(&one).unwrap(), one);
    }

    #[test]
    fn commutative_inverse_with_parameter() {
        // (1 + z Y + Y^2)^(-1) = 1 - z Y + (z^2 - 1) Y^2 + ...
        let f = Arc::new(SkewForm::new(from_rows(&[vec![0]]).unwrap()).unwrap());
        let a = QSeries::new(
            TorusElem::from_terms(
                f.clone(),
                [
                    (vec![0], QCoeff::one()),
                    (vec![1], QCoeff::param()),
                    (vec![2], QCoeff::one()),
                ],
            )
            .unwrap(),
            2,
        )
        .unwrap();
        let inv = series_inverse(&a).unwrap();
        assert_eq!(inv.elem().coeff(&[1]), qc("-h"));
        assert_eq!(inv.elem().coeff(&[2]), qc("h^2 - 1"));
    }

    #[test]
    fn non_unit_constant_fails() {
        let f = std_form();
        let a = QSeries::monomial(f, vec![0, 0], QCoeff::from_int(2), 3).unwrap();
        assert!(matches!(series_inverse(&a), Err(Error::Inversion(_))));
    }

    #[test]
    fn canonical_text() {
        let f = std_form();
        let e = TorusElem::from_terms(
            f,
            [(vec![0, 1], qc("q^(1/2)")), (vec![1, 0], qc("1 + q"))],
        )
        .unwrap();
        assert_eq!(e.to_string(), "q^(1/2) * X(0,1) + (1 + q) * X(1,0)");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_form(m: usize) -> impl Strategy<Value = Arc<SkewForm>> {
            prop::collection::vec(-2i64..3, m * m).prop_map(move |v| {
                let mut a = IMat::zeros(m, m);
                for i in 0..m {
                    for j in (i + 1)..m {
                        a[(i, j)] = v[i * m + j];
                        a[(j, i)] = -v[i * m + j];
                    }
                }
                Arc::new(SkewForm::new(a).unwrap())
            })
        }

        fn arb_elem(f: Arc<SkewForm>, lo: i64) -> impl Strategy<Value = TorusElem> {
            let m = f.dim();
            prop::collection::vec(
                (prop::collection::vec(lo..3, m), -2i32..3, -3i64..4),
                0..=6,
            )
            .prop_map(move |ts| {
                TorusElem::from_terms(
                    f.clone(),
                    ts.into_iter()
                        .map(|(a, h, c)| (a, QCoeff::monomial(h, 0, c))),
                )
                .unwrap()
            })
        }

        fn triple() -> impl Strategy<Value = (TorusElem, TorusElem, TorusElem)> {
            (1usize..=4)
                .prop_flat_map(arb_form)
                .prop_flat_map(|f| (arb_elem(f.clone(), -2), arb_elem(f.clone(), -2), arb_elem(f, -2)))
        }

        fn commutative_product(
            a: &BTreeMap<IVec, BigInt>,
            b: &BTreeMap<IVec, BigInt>,
        ) -> BTreeMap<IVec, BigInt> {
            let mut out: BTreeMap<IVec, BigInt> = BTreeMap::new();
            for (ea, ca) in a {
                for (eb, cb) in b {
                    let e: IVec = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                    *out.entry(e).or_default() += ca * cb;
                }
            }
            out.retain(|_, c| *c != BigInt::from(0));
            out
        }

        proptest! {
            #[test]
            fn associativity((a, b, c) in triple()) {
                let l = a.mul(&b).unwrap().mul(&c).unwrap();
                let r = a.mul(&b.mul(&c).unwrap()).unwrap();
                prop_assert_eq!(l, r);
            }

            #[test]
            fn classical_limit((a, b, _c) in triple()) {
                let p = a.mul(&b).unwrap().at_one();
                prop_assert_eq!(p, commutative_product(&a.at_one(), &b.at_one()));
            }

            #[test]
            fn inverse_is_two_sided(
                (f, body) in (1usize..=3).prop_flat_map(arb_form)
                    .prop_flat_map(|f| (Just(f.clone()), arb_elem(f, 0))),
                n in 0u32..6,
            ) {
                let m = f.dim();
                let mut elem = body;
                elem.terms.remove(&vec![0; m]);
                let elem = elem.add(&TorusElem::one(f.clone())).unwrap();
                let a = QSeries::new(elem, n).unwrap();
                let b = series_inverse(&a).unwrap();
                let one = QSeries::one(f, n);
                prop_assert_eq!(a.mul(&b).unwrap(), one.clone());
                prop_assert_eq!(b.mul(&a).unwrap(), one);
            }
        }
    }
}
