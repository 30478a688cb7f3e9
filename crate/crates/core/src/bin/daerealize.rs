fn main() {
    let (code, out) = daerealize::cli::run(std::env::args_os());
    if code == 3 {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
