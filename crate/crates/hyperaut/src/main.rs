use std::io::Write;

fn main() {
    let (out, err, code) = hyperaut::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(out.as_bytes());
    let _ = std::io::stderr().write_all(err.as_bytes());
    std::process::exit(i32::from(code));
}
