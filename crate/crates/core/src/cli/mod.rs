//! Seed files, bundled fixtures, command implementations and verification
//! reports behind the `gcluster` binary.

mod commands;
mod fixtures;
mod random;
mod seedfile;
mod verify;

pub use commands::{cmd_example, cmd_fpoly, cmd_mutate, cmd_verify, exit_code, FpolyMode, FpolyOutput, MutateDump, VerifySource};
pub use fixtures::{fixture, FIXTURES};
pub use random::{random_instances, Instance, RandomOptions};
pub use seedfile::{parse_path, render_path, Mode, RField, Seed, SeedFile, ZValue};
pub use verify::{verify_instance, Check, CheckResult, Status, VerifyReport};
