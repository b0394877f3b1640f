fn main() {
    std::process::exit(gapprob::run(std::env::args_os()));
}
