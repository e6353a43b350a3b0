use crate::error::{Error, Result};

use super::seedfile::{Mode, RField, SeedFile, ZValue};

pub const FIXTURES: [&str; 2] = ["g2", "rank2"];

/// Bundled seeds: the quantum `G2` seed and the rank 2 classical seed with
/// `r = (2, 1)`, `z = (1, z, 1; 1, 1)`.
pub fn fixture(name: &str) -> Result<SeedFile> {
    let b = vec![vec![0, 1], vec![-1, 0]];
    match name {
        "g2" => Ok(SeedFile {
            mode: Mode::Quantum,
            n: 2,
            m: 2,
            btilde: b.clone(),
            lambda: Some(b),
            r: RField::List(vec![3, 1]),
            h: Some(vec![
                ["1", "h", "h", "1"].map(String::from).to_vec(),
                ["1", "1"].map(String::from).to_vec(),
            ]),
            z: None,
        }),
        "rank2" => Ok(SeedFile {
            mode: Mode::Classical,
            n: 2,
            m: 2,
            btilde: b,
            lambda: None,
            r: RField::List(vec![2, 1]),
            h: None,
            z: Some(vec![
                vec![ZValue::Int(1), ZValue::Text("z".into()), ZValue::Int(1)],
                vec![ZValue::Int(1), ZValue::Int(1)],
            ]),
        }),
        _ => Err(Error::Input(format!(
            "unknown example `{name}` (available: {})",
            FIXTURES.join(", ")
        ))),
    }
}
