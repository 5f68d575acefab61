fn main() {
    std::process::exit(ensemble_moments::cli::run(std::env::args_os()));
}
