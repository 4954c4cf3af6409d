fn main() {
    std::process::exit(neutral_modes::cli::run(std::env::args_os()));
}
