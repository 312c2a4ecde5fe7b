fn main() {
    std::process::exit(saw_lab::cli::main_with_args(std::env::args_os()));
}
