fn main() {
    std::process::exit(thetaforge_cli::run());
}
