fn main() {
    std::process::exit(diffnet::cli::run_from_args(std::env::args_os()));
}
