fn main() {
    std::process::exit(legendre_paths::cli::main_with_args(std::env::args_os()));
}
