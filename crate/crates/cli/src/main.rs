fn main() {
    std::process::exit(tropwdp_cli::run(std::env::args_os()));
}
