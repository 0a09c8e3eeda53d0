fn main() {
    std::process::exit(coquasi::cli::run());
}
