use clap::Parser;
use qg2::cli::{run, Cli};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let code = run(cli, &mut stdout.lock());
    std::process::exit(code);
}
