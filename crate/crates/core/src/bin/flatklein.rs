fn main() {
    let code = flatklein::cli::run(std::env::args_os(), &mut std::io::stdout());
    std::process::exit(code);
}
