use std::process::ExitCode;

fn main() -> ExitCode {
    hyperstern::cli::main_with_args(std::env::args_os())
}
