use epiforge_cli::EXIT_OK;

fn main() {
    let code = match epiforge_cli::run(std::env::args_os()) {
        Ok(output) => {
            for warning in &output.warnings {
                eprintln!("warning: {warning}");
            }
            print!("{}", output.stdout);
            EXIT_OK
        }
        Err(err) => {
            eprintln!("{err}");
            err.exit_code()
        }
    };
    std::process::exit(code);
}
