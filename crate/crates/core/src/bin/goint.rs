fn main() {
    std::process::exit(goint_core::cli::run(std::env::args_os()));
}
