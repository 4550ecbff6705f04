fn main() {
    std::process::exit(anisoperc::cli::run(std::env::args_os()));
}
