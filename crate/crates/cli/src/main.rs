fn main() -> std::process::ExitCode {
    finito_cli::run()
}
