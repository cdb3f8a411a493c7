fn main() {
    std::process::exit(slopekit_cli::run());
}
