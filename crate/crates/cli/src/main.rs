use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(steinernet_cli::run(std::env::args_os()))
}
