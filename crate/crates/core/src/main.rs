fn main() {
    std::process::exit(coughwatch::cli::main_entry());
}
