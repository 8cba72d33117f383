use clap::Parser;

fn main() {
    let cli = latgenus_cli::Cli::parse();
    std::process::exit(latgenus_cli::run(cli));
}
