fn main() {
    std::process::exit(yamabe_radial::cli::run());
}
