fn main() {
    std::process::exit(graded_core::cli::run(std::env::args_os()));
}
