//! Quantum torus products and truncated series inversion.

use std::sync::Arc;

use gcluster::extorus::{series_inverse, QSeries, SkewForm, TorusElem};
use gcluster::matrix::from_rows;
use gcluster::qcoeff::QCoeff;

fn main() -> gcluster::error::Result<()> {
    let form = Arc::new(SkewForm::new(from_rows(&[vec![0, 1], vec![-1, 0]])?)?);
    let x1 = TorusElem::x(form.clone(), vec![1, 0]);
    let x2 = TorusElem::x(form.clone(), vec![0, 1]);
    println!("X1 X2 = {}", x1.mul(&x2)?);
    println!("X2 X1 = {}", x2.mul(&x1)?);

    let h: QCoeff = "q^(1/2) + q^(-1/2)".parse()?;
    let sum = TorusElem::one(form.clone()).add(&x1.scale(&h))?.add(&x1.mul(&x1)?)?;
    println!("(1 + h X1 + X1^2)^2 = {}", sum.mul(&sum)?);

    let bound = 3;
    let s = QSeries::new(TorusElem::one(form.clone()).add(&x1.add(&x2)?)?, bound)?;
    let inv = series_inverse(&s)?;
    println!("(1 + X1 + X2)^-1 = {inv}");
    assert_eq!(s.mul(&inv)?, QSeries::one(form, bound));
    Ok(())
}
