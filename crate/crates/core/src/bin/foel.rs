fn main() {
    std::process::exit(foel::cli::run());
}
