fn main() {
    std::process::exit(hypres::cli::main_with_args(std::env::args_os()));
}
