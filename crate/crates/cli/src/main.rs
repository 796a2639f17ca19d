use std::io::Write;
use std::path::PathBuf;

fn main() {
    let env_cache = std::env::var_os(elsvlab_cli::CACHE_ENV).map(PathBuf::from);
    let (out, err) = elsvlab_cli::run(std::env::args_os(), env_cache);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(err.as_bytes());
    std::process::exit(out.code);
}
