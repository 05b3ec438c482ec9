fn main() {
    std::process::exit(frobscan::cli::main());
}
