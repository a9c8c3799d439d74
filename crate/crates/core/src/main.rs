fn main() {
    std::process::exit(cohomkern::cli::run(std::env::args_os()));
}
