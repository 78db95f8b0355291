fn main() {
    std::process::exit(nilp2_cli::main_with(std::env::args().collect()));
}
