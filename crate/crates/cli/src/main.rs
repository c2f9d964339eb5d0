use std::io::Write;

fn main() {
    let out = latcurve_cli::run(std::env::args());
    std::io::stdout().write_all(out.stdout.as_bytes()).ok();
    if !out.stderr.is_empty() {
        eprint!("{}", out.stderr);
    }
    std::process::exit(out.code);
}
