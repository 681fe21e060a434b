use std::io::Write;
use std::process;

fn main() {
    let outcome = mcx::run(std::env::args_os());
    let out = if outcome.code == 2 { &mut std::io::stderr() as &mut dyn Write } else { &mut std::io::stdout() };
    let _ = out.write_all(outcome.rendered.as_bytes());
    process::exit(outcome.code);
}
