fn main() {
    std::process::exit(actdim::cli::main());
}
