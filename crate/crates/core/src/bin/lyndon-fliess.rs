use std::process::ExitCode;

fn main() -> ExitCode {
    match lyndon_fliess::cli::run(std::env::args_os()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
