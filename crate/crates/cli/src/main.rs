fn main() {
    std::process::exit(belltool::run(std::env::args_os()));
}
