fn main() {
    std::process::exit(coclass_cli::main_with(std::env::args_os()));
}
