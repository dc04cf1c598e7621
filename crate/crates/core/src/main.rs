use std::io;

fn main() {
    let code = morava_calc::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
