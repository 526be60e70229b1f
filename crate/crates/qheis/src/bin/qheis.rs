fn main() {
    std::process::exit(qheis::cli::run());
}
