fn main() {
    std::process::exit(colorlab::cli::main_with_args());
}
