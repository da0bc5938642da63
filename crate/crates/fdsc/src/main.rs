fn main() {
    std::process::exit(fdsc::cli::run(std::env::args_os()));
}
