use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(hypercs_cli::run(std::env::args_os()))
}
