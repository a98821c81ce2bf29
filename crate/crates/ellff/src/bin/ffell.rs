fn main() {
    std::process::exit(ellff::cli::run(std::env::args().collect()));
}
