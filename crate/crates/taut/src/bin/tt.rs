fn main() {
    std::process::exit(taut::cli::run(std::env::args_os()));
}
