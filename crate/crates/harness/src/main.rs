fn main() {
    std::process::exit(ffmoments::cli::main());
}
