fn main() {
    std::process::exit(diskzeroes::cli::run(std::env::args_os()));
}
