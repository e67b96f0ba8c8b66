fn main() {
    std::process::exit(eigenpencil::cli::run(std::env::args_os()));
}
