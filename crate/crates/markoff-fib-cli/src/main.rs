fn main() {
    std::process::exit(markoff_fib_cli::run(std::env::args()));
}
