use clap::Parser;

fn main() {
    let cli = ybhom::Cli::parse();
    std::process::exit(ybhom::run(cli));
}
