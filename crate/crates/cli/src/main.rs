use std::io::Write;

fn main() {
    let (text, code) = qldpc_cli::cli::run_from_args(std::env::args_os());
    if code == 0 {
        print!("{text}");
        let _ = std::io::stdout().flush();
    } else {
        eprint!("{text}");
    }
    std::process::exit(code);
}
