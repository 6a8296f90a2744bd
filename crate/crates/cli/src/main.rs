use std::process::ExitCode;

fn main() -> ExitCode {
    garch_portfolio_cli::main_entry()
}
