fn main() {
    std::process::exit(nhmf_cli::run(std::env::args_os()));
}
