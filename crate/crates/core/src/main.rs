fn main() {
    std::process::exit(gibbsdom::cli::main_with_args(std::env::args_os()));
}
