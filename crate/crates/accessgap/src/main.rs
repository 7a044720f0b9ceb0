fn main() {
    std::process::exit(accessgap::cli::run());
}
