fn main() {
    std::process::exit(latgreen::cli::run(std::env::args_os()));
}
