//! Quantum F-polynomials of the G2-type seed with `R = diag(3, 1)`, with
//! stabilization certificates and the exchange-relation check.

use gcluster::cli::{fixture, Seed};
use gcluster::gqca::{extract_fpolys, separation_check_quantum, ExtractOptions};

fn main() -> gcluster::error::Result<()> {
    let Seed::Quantum(seed) = fixture("g2")?.load()? else {
        unreachable!("g2 is a quantum fixture");
    };
    let path = [0, 1, 0, 1, 0, 1, 0, 1];
    let run = extract_fpolys(&seed, &path, ExtractOptions::default())?;
    let mut fs = Vec::new();
    for (j, e) in run.extractions.iter().enumerate() {
        let (f, cert) = e.clone().into_result()?;
        println!("t{}: g = {:?}", j + 1, run.path.steps[j].gtilde);
        println!("    F = {f}");
        println!("    truncation {} (classical degree {})", cert.truncation, cert.classical_degree);
        fs.push(f);
    }
    separation_check_quantum(&seed, &run.path, &fs)?;
    println!("exchange relations hold at every step");
    Ok(())
}
