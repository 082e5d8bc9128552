fn main() {
    std::process::exit(gkz::cli::run(std::env::args_os()));
}
