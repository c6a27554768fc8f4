fn main() {
    std::process::exit(mplandscape::cli::run_from_args(std::env::args_os()));
}
