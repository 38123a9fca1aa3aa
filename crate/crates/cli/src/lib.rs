//! Command-line front end for `ratcurve`: instance files, the per-instance
//! subcommands and the self-test sweep.

pub mod commands;
pub mod instance;
pub mod plain;
pub mod selftest;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 1;
    pub const CERTIFICATION: i32 = 2;
    pub const SELFTEST: i32 = 3;
}

/// Exit code for a library error.
pub fn exit_code(err: &ratcurve::Error) -> i32 {
    if err.is_input_error() {
        exit::INPUT
    } else {
        exit::CERTIFICATION
    }
}
