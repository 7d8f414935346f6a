fn main() {
    std::process::exit(amalgam::cli::run());
}
