fn main() {
    let code = mucube_cli::run_from(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
