use clap::Parser;

fn main() {
    let cli = modelchoice::cli::Cli::parse();
    std::process::exit(modelchoice::cli::run(&cli));
}
