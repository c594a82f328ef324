use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = iwasawa_cli::run_from_args(std::env::args_os());
    if out.code == 2 {
        eprint!("{}", out.text);
    } else {
        let _ = std::io::stdout().write_all(out.text.as_bytes());
    }
    ExitCode::from(out.code as u8)
}
