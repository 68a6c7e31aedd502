use std::io::Write;

fn main() {
    let (code, out) = regsync::cli::run_cli(std::env::args_os(), &mut std::io::stdin().lock());
    let mut stream: Box<dyn Write> = if code == regsync::cli::EXIT_USAGE {
        Box::new(std::io::stderr())
    } else {
        Box::new(std::io::stdout())
    };
    let _ = stream.write_all(out.as_bytes());
    std::process::exit(code);
}
