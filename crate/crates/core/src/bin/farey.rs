fn main() { std::process::exit(farey_odd::cli::main()); }
