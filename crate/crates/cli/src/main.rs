use std::io::Write;

fn main() {
    let env = std::env::var("GOP_TRUNC_DEFAULT").ok();
    let r = gop_cli::run_args(std::env::args_os(), env.as_deref());
    std::io::stdout().write_all(r.stdout.as_bytes()).ok();
    std::io::stderr().write_all(r.stderr.as_bytes()).ok();
    std::process::exit(r.code);
}
