use std::io::{Read, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut read_stdin = || {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    };
    let out = artc::run(std::env::args_os(), &mut read_stdin);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
