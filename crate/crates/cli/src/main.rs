fn main() {
    std::process::exit(fswap_cli::run(std::env::args_os()));
}
