fn main() {
    std::process::exit(critical_chain::experiments::cli::run(std::env::args_os()));
}
