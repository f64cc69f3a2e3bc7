fn main() {
    std::process::exit(exchange_w::cli::run(std::env::args_os()));
}
