fn main() {
    std::process::exit(kxcount::cli::main_with_args(std::env::args_os()));
}
