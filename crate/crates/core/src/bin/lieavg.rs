fn main() {
    std::process::exit(lieavg::query::cli::main());
}
