fn main() {
    std::process::exit(kdcc::cli::run(std::env::args_os()));
}
