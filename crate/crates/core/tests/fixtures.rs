//! End-to-end runs of the bundled fixtures through the library front end.

use gcluster::cli::{cmd_fpoly, cmd_verify, fixture, Check, FpolyMode, Status, VerifySource};
use gcluster::gqca::ExtractOptions;

const G2_PATH: &str = "1,2,1,2,1,2,1,2";

const G2_F: [&str; 8] = [
    "1 + h*q^(-1/2)*Z1 + h*q^(-1)*Z1^2 + q^(-3/2)*Z1^3",
    "1 + h*q^(-1/2)*Z1 + h*q^(-1)*Z1^2 + q^(-3/2)*Z1^3 + q^(-1/2)*Z1^3*Z2",
    "1 + (h*q^(-3/2) + h*q^(-1/2))*Z1 + (h*q^(-3) + h^2*q^(-2) + h*q^(-1))*Z1^2 \
     + (q^(-9/2) + h^2*q^(-7/2) + h^2*q^(-5/2) + q^(-3/2))*Z1^3 + h*q^(-1/2)*Z1^2*Z2 \
     + (h*q^(-5) + h^2*q^(-4) + h*q^(-3))*Z1^4 + (q^(-5/2) + q^(-3/2) + h^2*q^(-3/2) + q^(-1/2))*Z1^3*Z2 \
     + (h*q^(-11/2) + h*q^(-9/2))*Z1^5 + (h*q^(-7/2) + h*q^(-5/2) + h^2*q^(-5/2) + h*q^(-3/2))*Z1^4*Z2 \
     + q^(-6)*Z1^6 + (h*q^(-9/2) + 2*h*q^(-7/2) + h*q^(-5/2))*Z1^5*Z2 + h*q^(-1)*Z1^4*Z2^2 \
     + (q^(-11/2) + q^(-9/2) + q^(-7/2))*Z1^6*Z2 + (h*q^(-5/2) + h*q^(-3/2))*Z1^5*Z2^2 \
     + (q^(-4) + q^(-3) + q^(-2))*Z1^6*Z2^2 + q^(-3/2)*Z1^6*Z2^3",
    "1 + h*q^(-1/2)*Z1 + h*q^(-1)*Z1^2 + q^(-3/2)*Z1^3 + h*q^(-1/2)*Z1^2*Z2 \
     + (q^(-3/2) + q^(-1/2))*Z1^3*Z2 + q^(-1/2)*Z1^3*Z2^2",
    "1 + h*q^(-1/2)*Z1 + h*q^(-1)*Z1^2 + h*q^(-1/2)*Z1*Z2 + q^(-3/2)*Z1^3 \
     + (h*q^(-3/2) + h*q^(-1/2))*Z1^2*Z2 + (q^(-5/2) + q^(-3/2) + q^(-1/2))*Z1^3*Z2 \
     + h*q^(-1)*Z1^2*Z2^2 + (q^(-5/2) + q^(-3/2) + q^(-1/2))*Z1^3*Z2^2 + q^(-3/2)*Z1^3*Z2^3",
    "1 + q^(-1/2)*Z2",
    "1",
    "1",
];

fn prefix(path: &str, len: usize) -> String {
    path.split(',').take(len).collect::<Vec<_>>().join(",")
}

#[test]
fn g2_all_steps() {
    let file = fixture("g2").unwrap();
    for (j, expect) in G2_F.iter().enumerate() {
        let out = cmd_fpoly(&file, &prefix(G2_PATH, j + 1), j % 2 + 1, FpolyMode::Quantum, ExtractOptions::default())
            .unwrap();
        assert_eq!(out.f, *expect, "t{}", j + 1);
        if j < 6 {
            assert!(out.certificate.unwrap().truncation <= 10);
        }
    }
}

#[test]
fn g2_classical_shadow_modes_agree() {
    let file = fixture("g2").unwrap();
    for len in 1..=8 {
        let p = prefix(G2_PATH, len);
        let i = (len - 1) % 2 + 1;
        let direct = cmd_fpoly(&file, &p, i, FpolyMode::Direct, ExtractOptions::default()).unwrap();
        for mode in [FpolyMode::Gupta, FpolyMode::Expansion] {
            let other = cmd_fpoly(&file, &p, i, mode, ExtractOptions::default()).unwrap();
            assert_eq!(other.f, direct.f, "t{len} {mode:?}");
        }
    }
}

#[test]
fn rank2_all_modes() {
    let file = fixture("rank2").unwrap();
    let expect = [
        "1 + z*y1 + y1^2",
        "1 + z*y1 + y1^2 + y1^2*y2",
        "1 + z*y1 + y1^2 + z*y1*y2 + 2*y1^2*y2 + y1^2*y2^2",
        "1 + y2",
    ];
    for (j, f) in expect.iter().enumerate() {
        for mode in [FpolyMode::Direct, FpolyMode::Gupta, FpolyMode::Expansion] {
            let out = cmd_fpoly(&file, &prefix("1,2,1,2", j + 1), j % 2 + 1, mode, ExtractOptions::default()).unwrap();
            assert_eq!(out.f, *f, "t{} {mode:?}", j + 1);
        }
    }
}

#[test]
fn fixtures_verify_clean() {
    for (name, path) in [("g2", G2_PATH), ("rank2", "1,2,1,2,1,2")] {
        let source = VerifySource::File {
            file: fixture(name).unwrap(),
            path: path.into(),
        };
        let report = cmd_verify(&source, &Check::ALL, ExtractOptions::default()).unwrap();
        for c in &report.checks {
            let expect = if name == "rank2" && c.check == Check::Q1 {
                Status::Skipped
            } else {
                Status::Pass
            };
            assert_eq!(c.status, expect, "{name} {:?}: {:?}", c.check, c.counterexample);
        }
        assert_eq!(report.exit_code(), 0);
    }
}
