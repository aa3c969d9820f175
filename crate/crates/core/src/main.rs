fn main() {
    std::process::exit(qpagerank::cli::run(std::env::args_os()));
}
