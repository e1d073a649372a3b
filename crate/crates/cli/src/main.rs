use clap::Parser;
use ringel_hall_cli::{main_with, RunConfig};

fn main() {
    // `ringel-hall run <flags> <command>` is accepted as a synonym
    let mut args: Vec<String> = std::env::args().collect();
    if args.get(1).map(String::as_str) == Some("run") {
        args.remove(1);
    }
    let cfg = RunConfig::parse_from(args);
    std::process::exit(main_with(&cfg));
}
