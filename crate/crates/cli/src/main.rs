use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = puiseux_cli::run(std::env::args_os());
    if !out.stdout.is_empty() {
        println!("{}", out.stdout.trim_end());
    }
    if !out.stderr.is_empty() {
        let _ = writeln!(std::io::stderr(), "{}", out.stderr.trim_end());
    }
    ExitCode::from(out.code as u8)
}
