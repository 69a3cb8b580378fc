use std::io::Write;

fn main() {
    let tol = std::env::var("FUSCAT_TOL").ok();
    let out = fuscat_cli::run(std::env::args_os(), tol.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
