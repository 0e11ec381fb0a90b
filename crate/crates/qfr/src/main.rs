use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (output, code) = qfr::cli::run(&args);
    if code == 2 {
        let _ = write!(std::io::stderr(), "{output}");
    } else {
        let _ = write!(std::io::stdout(), "{output}");
    }
    std::process::exit(code);
}
