use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let seed = std::env::var(aml_cli::SEED_ENV).ok();
    let out = aml_cli::run(std::env::args(), seed.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
