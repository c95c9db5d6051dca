fn main() {
    std::process::exit(gkk::cli::main_with_args(std::env::args_os()));
}
