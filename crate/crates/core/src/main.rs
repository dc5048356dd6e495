fn main() {
    std::process::exit(partineq::cli::run(std::env::args_os()));
}
