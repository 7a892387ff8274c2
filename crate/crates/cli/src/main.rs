use std::io::Write;

fn main() {
    let (code, stdout, stderr) = sqerr::run_args(std::env::args_os());
    print!("{stdout}");
    eprint!("{stderr}");
    let _ = std::io::stdout().flush();
    std::process::exit(code);
}
