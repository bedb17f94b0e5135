fn main() {
    std::process::exit(pfvolume::cli::run_placeholder());
}
