fn main() {
    std::process::exit(selfaffine::cli::run_cli(std::env::args_os()));
}
