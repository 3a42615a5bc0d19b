use clap::Parser;

use expsel::cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let envelope = execute(&cli);
    print!("{}", envelope.render(cli.format));
    std::process::exit(envelope.exit_code());
}
