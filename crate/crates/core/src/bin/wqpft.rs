fn main() {
    std::process::exit(wqpft::cli::cli_main(std::env::args_os()));
}
