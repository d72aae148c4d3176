fn main() -> std::process::ExitCode {
    sprdf::cli::run(std::env::args_os())
}
