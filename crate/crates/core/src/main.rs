fn main() {
    std::process::exit(gapbound::cli::run());
}
