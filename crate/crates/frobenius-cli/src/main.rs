fn main() {
    std::process::exit(frobenius_cli::run_from_args(std::env::args_os()));
}
