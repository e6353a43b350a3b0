//! Reading and writing seed files.

use gcluster::cli::{cmd_fpoly, FpolyMode, SeedFile};
use gcluster::gqca::ExtractOptions;

const SEED: &str = r#"{
  "mode": "quantum",
  "n": 2,
  "m": 4,
  "Btilde": [[0, 1], [-1, 0], [1, 0], [0, 1]],
  "Lambda": [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, -1], [0, 1, 1, 0]],
  "R": [2, 1],
  "h": [["1", "q^(1/2) + q^(-1/2)", "1"], ["1", "1"]]
}"#;

fn main() -> gcluster::error::Result<()> {
    let file = SeedFile::from_json(SEED)?;
    let seed = file.load()?;
    println!("rank {}, D = {:?}", seed.n(), seed.quantum().map(|q| q.pair().d().to_vec()));
    for (path, index) in [("1", 1), ("1,2", 2), ("1,2,1", 1)] {
        let out = cmd_fpoly(&file, path, index, FpolyMode::Quantum, ExtractOptions::default())?;
        println!("path {path}, index {index}: F = {}", out.f);
    }
    println!("{}", seed.to_file().to_json());
    Ok(())
}
