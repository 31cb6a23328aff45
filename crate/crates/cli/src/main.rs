use std::io::{self, Write};
use std::thread;

/// Finite names are built by recursion as deep as their value.
const STACK_BYTES: usize = 1 << 30;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let worker = thread::Builder::new().stack_size(STACK_BYTES).spawn(move || {
        let (stdout, stderr) = (io::stdout(), io::stderr());
        let (mut out, mut err) = (stdout.lock(), stderr.lock());
        let code = ord_cli::run(&args, &mut out, &mut err);
        let _ = out.flush();
        code
    });
    let code = worker.expect("spawn the command thread").join().unwrap_or(ord_cli::EXIT_ERROR);
    std::process::exit(code);
}
