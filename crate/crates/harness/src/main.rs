fn main() {
    std::process::exit(rlab_harness::cli::main_with_args(std::env::args_os()));
}
