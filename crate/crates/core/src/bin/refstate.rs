fn main() {
    std::process::exit(refstate::cli::main_with_args(std::env::args_os()));
}
