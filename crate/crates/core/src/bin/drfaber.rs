use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let out = drfaber::cli::run(&args);
    std::io::stdout().write_all(out.stdout.as_bytes()).ok();
    std::io::stderr().write_all(out.stderr.as_bytes()).ok();
    std::process::exit(out.code);
}
