fn main() {
    std::process::exit(rootsmith::cli::run(std::env::args_os()));
}
