fn main() {
    std::process::exit(minperiod::cli::run(std::env::args_os()));
}
