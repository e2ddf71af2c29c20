fn main() {
    std::process::exit(dglie::cli::run(std::env::args_os()));
}
