fn main() {
    std::process::exit(fishburn_cli::run(std::env::args_os()));
}
