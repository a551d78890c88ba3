fn main() {
    std::process::exit(numrange_lab::cli::run_from(std::env::args_os()));
}
