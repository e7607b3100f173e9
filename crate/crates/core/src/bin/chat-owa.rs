use std::io;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = chat_owa::cli::run(std::env::args_os(), &mut out, &mut io::stderr());
    std::process::exit(code);
}
