use std::process::ExitCode;

fn main() -> ExitCode {
    wildmckay::cli::main()
}
