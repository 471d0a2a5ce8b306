fn main() {
    std::process::exit(schemeforge::cli::main_from_args(std::env::args_os()));
}
