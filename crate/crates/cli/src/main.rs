fn main() {
    std::process::exit(pretzel_lo::run(std::env::args_os()));
}
