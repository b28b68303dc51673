fn main() {
    std::process::exit(spinorize_cli::main_with_args(std::env::args_os()));
}
