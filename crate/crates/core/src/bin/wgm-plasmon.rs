fn main() {
    std::process::exit(wgm_plasmon::cli::main_with_args(std::env::args_os()));
}
