fn main() {
    let (code, text) = dirac_cli::run(std::env::args());
    print!("{}", text);
    std::process::exit(code);
}
