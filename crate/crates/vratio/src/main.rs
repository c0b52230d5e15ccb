use std::process::ExitCode;

fn main() -> ExitCode {
    vratio::cli::run()
}
