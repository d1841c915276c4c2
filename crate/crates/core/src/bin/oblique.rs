fn main() {
    std::process::exit(oblique::cli::run(std::env::args_os()));
}
