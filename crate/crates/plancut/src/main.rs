use clap::Parser;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = plancut::cli::Cli::parse();
    std::process::exit(plancut::cli::run(args));
}
