use clap::Parser;

use k3kit::cli::{run, Cli, JobSpec};

fn main() {
    let job = JobSpec::from(Cli::parse());
    let (code, report) = run(&job);
    print!("{report}");
    std::process::exit(code);
}
