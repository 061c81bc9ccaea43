fn main() {
    std::process::exit(navier_schwarz::cli::main_with_args(std::env::args_os()));
}
