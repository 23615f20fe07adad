fn main() {
    std::process::exit(spexlab_cli::run(std::env::args()));
}
