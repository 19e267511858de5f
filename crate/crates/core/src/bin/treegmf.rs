use std::process::ExitCode;

fn main() -> ExitCode {
    treegmf::cli::main()
}
