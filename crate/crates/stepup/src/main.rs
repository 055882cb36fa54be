fn main() {
    std::process::exit(stepup::cli::main_entry());
}
