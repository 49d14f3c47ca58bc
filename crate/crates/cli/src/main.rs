fn main() {
    std::process::exit(qkt_cli::main_with_args(std::env::args_os()));
}
