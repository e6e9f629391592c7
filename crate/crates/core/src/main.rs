fn main() {
    std::process::exit(sqfmod::cli::run())
}
