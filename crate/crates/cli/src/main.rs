use std::process::ExitCode;

fn main() -> ExitCode {
    let (status, text) = lifedens_cli::run(std::env::args_os());
    if status == lifedens_cli::EXIT_USAGE || text.starts_with("error:") {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    ExitCode::from(status as u8)
}
