fn main() {
    std::process::exit(fclosure_cli::run(std::env::args_os()));
}
