//! Command-line entry point; see [`wblowup::cli`].

fn main() {
    let (code, out) = wblowup::cli::dispatch(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
