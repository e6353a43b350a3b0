//! C-, G- and G~-patterns along a path, with the duality identities checked
//! at every vertex.

use gcluster::matrix::{from_rows, principal_part, to_rows};
use gcluster::patterns::{d0_of, run_path, verify_gb_bc, verify_tropical_duality};

fn main() -> gcluster::error::Result<()> {
    let bt = from_rows(&[vec![0, 2, -1], vec![-1, 0, 1], vec![1, -2, 0]])?;
    let r = [1, 2, 1];
    let path = [0, 1, 2, 0, 1];
    let b0 = principal_part(&bt);
    let d0 = d0_of(&b0, &r)?;
    for st in run_path(&bt, &r, &path)? {
        println!("t{}: C = {:?}  G = {:?}", st.t_index, to_rows(&st.c), to_rows(&st.g));
        assert!(verify_tropical_duality(&st.g, &st.c, &d0, &r));
        assert!(verify_gb_bc(&st.g, &principal_part(&st.bt), &b0, &st.c));
    }
    println!("G^T D0 R C = D0 R and G B_t = B_0 C hold at every vertex");
    Ok(())
}
