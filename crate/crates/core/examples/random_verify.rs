//! Verifies a reproducible random corpus of classical and quantum seeds.

use gcluster::cli::{cmd_verify, Check, RandomOptions, Status, VerifySource};
use gcluster::gqca::ExtractOptions;

fn main() -> gcluster::error::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let source = VerifySource::Random {
        seed,
        trials: 20,
        options: RandomOptions::default(),
    };
    let report = cmd_verify(&source, &Check::ALL, ExtractOptions::default())?;
    for check in Check::ALL {
        let count = |s| report.checks.iter().filter(|c| c.check == check && c.status == s).count();
        println!(
            "{:<10} pass {:>3}  skipped {:>3}  inconclusive {:>3}  fail {:>3}",
            check.name(),
            count(Status::Pass),
            count(Status::Skipped),
            count(Status::Inconclusive),
            count(Status::Fail)
        );
    }
    println!("{} instances in {:.0} ms: {:?}", report.instances, report.millis, report.status);
    Ok(())
}
