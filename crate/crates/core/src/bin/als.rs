fn main() {
    std::process::exit(asymmetric_landau::cli::main());
}
