fn main() {
    std::process::exit(poisson23::cli::cli_run_default());
}
