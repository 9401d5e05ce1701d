use std::io::{self, BufWriter};

fn main() {
    if let Err(msg) = puregaps_cli::configure_threads() {
        eprintln!("error: {msg}");
        std::process::exit(2);
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let code = puregaps_cli::run(std::env::args_os(), &mut out, &mut err);
    drop(out);
    std::process::exit(code);
}
