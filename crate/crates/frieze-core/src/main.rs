use clap::Parser;
use frieze_core::cli::{run, Cli};

fn main() {
    std::process::exit(run(&Cli::parse()));
}
