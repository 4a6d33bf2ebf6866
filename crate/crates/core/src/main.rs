fn main() {
    std::process::exit(wavefx::cli::run(std::env::args_os()));
}
