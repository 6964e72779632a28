use std::process::ExitCode;

fn main() -> ExitCode {
    beta_ensembles_cli::run(std::env::args_os())
}
