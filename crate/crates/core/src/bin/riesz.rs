fn main() {
    std::process::exit(riesz_core::cli::run(std::env::args_os()));
}
