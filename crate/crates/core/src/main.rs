fn main() {
    std::process::exit(tori::cli::main());
}
