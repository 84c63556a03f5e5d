fn main() {
    std::process::exit(orlicz_shadow::cli::main_with_args(std::env::args_os()));
}
