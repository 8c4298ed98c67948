fn main() {
    std::process::exit(graded_lie::cli::main());
}
