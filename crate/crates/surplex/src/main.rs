fn main() {
    std::process::exit(surplex::cli::main_entry());
}
