fn main() {
    std::process::exit(ccqed::cli::run(std::env::args_os()));
}
