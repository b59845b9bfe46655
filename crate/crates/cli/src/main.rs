use std::process::ExitCode;

fn main() -> ExitCode {
    let report = trishare_cli::run(std::env::args_os());
    print!("{}", report.out);
    ExitCode::from(report.code as u8)
}
