use std::io::Write;

use clap::Parser;

fn main() {
    let cli = udes::Cli::parse();
    let out = udes::run(&cli);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
