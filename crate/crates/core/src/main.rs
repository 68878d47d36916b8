fn main() {
    std::process::exit(dunkl_coulomb::cli::run(std::env::args_os()));
}
