fn main() {
    std::process::exit(quatleft::cli::main_exit_code());
}
