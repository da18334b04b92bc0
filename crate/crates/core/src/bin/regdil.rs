fn main() {
    std::process::exit(regdil::cli::run(std::env::args_os()));
}
