use std::io::Write;

fn main() {
    let outcome = qualprob::main_with(std::env::args_os(), std::io::stdin().lock());
    // a closed pipe is not worth a panic
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.status.code());
}
