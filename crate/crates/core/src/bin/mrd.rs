use clap::Parser;
use mrd_core::cli::{run, RunConfig};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cfg = RunConfig::parse();
    std::process::exit(run(&cfg));
}
