use std::process::ExitCode;

fn main() -> ExitCode {
    requilibrium_cli::main_with(std::env::args_os())
}
