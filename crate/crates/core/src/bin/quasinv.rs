fn main() { std::process::exit(quasinv::cli::main_entry()); }
