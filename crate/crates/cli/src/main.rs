fn main() {
    std::process::exit(hwmap_cli::run(std::env::args_os()));
}
