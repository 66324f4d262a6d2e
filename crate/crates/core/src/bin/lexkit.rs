fn main() -> std::process::ExitCode {
    lexkit::cli::main()
}
