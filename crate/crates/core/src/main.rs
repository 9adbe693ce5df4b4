fn main() {
    std::process::exit(subdiff::cli_io::main_with_args(std::env::args_os()));
}
