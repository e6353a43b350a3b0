//! F-polynomials of a rank 2 generalized cluster algebra three ways:
//! direct mutation, the Gupta product and its expanded sum.

use gcluster::gca::{f_polys_direct, gupta_expansion, gupta_l_sequence, gupta_product, ClassicalSeed};
use gcluster::matrix::from_rows;
use gcluster::seedcore::{MutationData, ZEntry};

fn main() -> gcluster::error::Result<()> {
    let b = from_rows(&[vec![0, 1], vec![-1, 0]])?;
    let z = vec![
        vec![ZEntry::one(), ZEntry::Symbol("z".into()), ZEntry::one()],
        vec![ZEntry::one(), ZEntry::one()],
    ];
    let seed = ClassicalSeed::new(b, MutationData::classical(vec![2, 1], z)?)?;
    let path = [0, 1, 0, 1];

    let direct = f_polys_direct(&seed, &path)?;
    let (mut atoms, ls) = gupta_l_sequence(&seed, &path)?;
    println!("L-sequence in (v1, v2, v3) = (y1, y2, z):");
    for (j, l) in ls.iter().enumerate() {
        let l = l.expand(&mut atoms);
        println!("L{} = ({}) / ({})", j + 1, l.num, l.den);
    }
    for k in 1..=path.len() {
        let product = gupta_product(&seed, &path[..k])?;
        let expansion = gupta_expansion(&seed, &path[..k])?;
        assert_eq!(product, direct[k - 1]);
        assert_eq!(expansion, direct[k - 1]);
        println!("F_{{{};t{k}}} = {product}", path[k - 1] + 1);
    }
    Ok(())
}
