use std::process::ExitCode;

fn main() -> ExitCode {
    gavt::cli::main_with(std::env::args_os())
}
