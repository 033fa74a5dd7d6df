fn main() {
    std::process::exit(regmatch::app::main_entry());
}
