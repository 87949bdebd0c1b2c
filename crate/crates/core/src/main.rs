fn main() {
    std::process::exit(mhcheck::cli::main_with_args(std::env::args_os()));
}
