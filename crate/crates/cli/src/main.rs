use std::io::{self, Read, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    // Only read standard input when an argument asks for it.
    let mut stdin = String::new();
    if args.iter().skip(1).any(|a| a == "-") {
        if let Err(e) = io::stdin().read_to_string(&mut stdin) {
            eprintln!("error: cannot read standard input: {e}");
            return ExitCode::from(ccspt_cli::EXIT_INPUT as u8);
        }
    }
    let out = ccspt_cli::run(args, &stdin);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = io::stdout().flush();
    ExitCode::from(out.code as u8)
}
