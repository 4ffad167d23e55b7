fn main() {
    std::process::exit(tdsynth::cli::run(std::env::args_os()));
}
