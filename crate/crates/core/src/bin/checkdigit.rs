use std::io;
use std::process::ExitCode;

use checkdigit::cli::{run, Io};

fn main() -> ExitCode {
    let stdin = io::stdin();
    let (mut stdout, mut stderr) = (io::stdout().lock(), io::stderr().lock());
    let mut io = Io { stdin: &mut stdin.lock(), stdout: &mut stdout, stderr: &mut stderr };
    let code = run(std::env::args_os(), &mut io);
    ExitCode::from(code as u8)
}
