fn main() {
    std::process::exit(krylov_cli::run(std::env::args_os()));
}
