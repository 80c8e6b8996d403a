use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use latticecount_cli::{cell_budget_from_env, execute, Cli, CELL_BUDGET_VAR};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget_var = std::env::var(CELL_BUDGET_VAR).ok();
    let result = cell_budget_from_env(budget_var.as_deref()).and_then(|budget| {
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        let r = execute(&cli, budget, &mut out);
        let _ = out.flush();
        r
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("latticecount: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
