fn main() {
    std::process::exit(bifactor::cli::main());
}
