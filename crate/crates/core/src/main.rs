use std::io::Write;

fn main() {
    let out = deltastab::cli::run(std::env::args_os(), &mut std::io::stdin().lock());
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{}", out.stdout.trim_end());
    drop(stdout);
    std::process::exit(out.code);
}
