use crate::error::{Error, Result};
use crate::extorus::{series_inverse, QSeries};
use crate::qcoeff::QCoeff;
use crate::seedcore::Sign;

/// The data of `Σ_s h_s (q^{b/2} z)^s` for the bracket operator `{a}`:
/// coefficients `h_0..h_r`, twist `b` (so `q^{b/2}` carries `b` half
/// units) and a series `z` without constant term.
#[derive(Clone, Debug)]
pub struct BracketBase {
    h: Vec<QCoeff>,
    b: i64,
    z: QSeries,
    powers: Vec<QSeries>,
}

impl BracketBase {
    pub fn new(h: Vec<QCoeff>, b: i64, z: QSeries) -> Result<Self> {
        if h.first().is_none_or(|c| !c.is_one()) {
            return Err(Error::MutationData("h_0 must be 1".into()));
        }
        if !z.constant_term().is_zero() {
            return Err(Error::Inversion("bracket variable has a constant term".into()));
        }
        let mut powers = vec![QSeries::one(z.form().clone(), z.bound())];
        for s in 1..h.len() {
            let next = powers[s - 1].mul(&z)?;
            powers.push(next);
        }
        Ok(Self { h, b, z, powers })
    }

    pub fn h(&self) -> &[QCoeff] {
        &self.h
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn z(&self) -> &QSeries {
        &self.z
    }

    pub fn bound(&self) -> u32 {
        self.z.bound()
    }

    /// `Σ_s h_s (q^{x/2} z)^s`.
    pub fn factor(&self, x: i64) -> Result<QSeries> {
        let mut acc = QSeries::zero(self.z.form().clone(), self.bound());
        for (s, (hs, zs)) in self.h.iter().zip(&self.powers).enumerate() {
            if hs.is_zero() {
                continue;
            }
            acc = acc.add(&zs.scale(hs).shift_q(s as i64 * x))?;
        }
        Ok(acc)
    }

    /// The base itself, `Σ_s h_s (q^{b/2} z)^s`.
    pub fn base(&self) -> Result<QSeries> {
        self.factor(self.b)
    }

    /// Same coefficients and twist with `z` replaced by `q^{x/2} z`.
    pub fn rescaled(&self, x: i64) -> Self {
        Self {
            h: self.h.clone(),
            b: self.b,
            z: self.z.shift_q(x),
            powers: self
                .powers
                .iter()
                .enumerate()
                .map(|(s, p)| p.shift_q(s as i64 * x))
                .collect(),
        }
    }

    /// Twists and inversion flags of the factors of `{a}`.
    fn factors(&self, a: i64) -> Vec<(i64, bool)> {
        if a > 0 {
            (1..=a).map(|i| (self.b * (2 * i - 1), false)).collect()
        } else {
            (a..=-1).map(|i| (self.b * (2 * i + 1), true)).collect()
        }
    }

    fn product(&self, a: i64, invert: bool) -> Result<QSeries> {
        let mut acc = QSeries::one(self.z.form().clone(), self.bound());
        // All factors are series in the single element z, so they commute.
        for (x, inv) in self.factors(a) {
            let f = self.factor(x)?;
            let f = if inv != invert { series_inverse(&f)? } else { f };
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    /// `(Σ_s h_s (q^{b/2} z)^s)^{{a}}`.
    pub fn power(&self, a: i64) -> Result<QSeries> {
        self.product(a, false)
    }

    /// The inverse of `{a}`.
    pub fn power_inverse(&self, a: i64) -> Result<QSeries> {
        self.product(a, true)
    }

    /// The exponent `-ε{a}`: the inverse of `{a}` for `ε = +1`, `{a}`
    /// itself for `ε = -1`.
    pub fn signed_power(&self, a: i64, eps: Sign) -> Result<QSeries> {
        match eps {
            Sign::Plus => self.power_inverse(a),
            Sign::Minus => self.power(a),
        }
    }
}

/// `{a}` truncated at total degree `n`.
pub fn bracketed_power(base: &BracketBase, a: i64, n: u32) -> Result<QSeries> {
    Ok(base.power(a)?.truncate(n))
}

/// Both sides of `{a + a'}(z) = {a}(q^{a'b} z) · {a'}(z)`.
pub fn cocycle_sides(base: &BracketBase, a: i64, a2: i64) -> Result<(QSeries, QSeries)> {
    let lhs = base.power(a + a2)?;
    let rhs = base.rescaled(2 * a2 * base.b()).power(a)?.mul(&base.power(a2)?)?;
    Ok((lhs, rhs))
}
