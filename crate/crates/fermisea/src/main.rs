use std::process::exit;

fn main() {
    exit(fermisea::cli::run(std::env::args_os()));
}
