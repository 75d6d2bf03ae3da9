fn main() -> std::process::ExitCode {
    finite_monkey::cli::main()
}
