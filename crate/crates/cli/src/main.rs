fn main() { std::process::exit(sethom_cli::run(std::env::args().collect())); }
