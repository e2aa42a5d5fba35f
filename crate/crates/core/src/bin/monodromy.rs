use std::process::ExitCode;

fn main() -> ExitCode {
    let out = monodromy::cli::run_args(std::env::args_os());
    if out.exit_code == monodromy::cli::EXIT_INPUT {
        eprint!("{}", out.report);
    } else {
        print!("{}", out.report);
    }
    ExitCode::from(out.exit_code as u8)
}
