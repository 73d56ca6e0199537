use std::io::Write;

fn main() {
    let out = nielsen_core::cli::run(std::env::args_os());
    // A closed pipe is not an error worth reporting.
    let _ = writeln!(std::io::stdout(), "{}", out.stdout);
    std::process::exit(out.code);
}
