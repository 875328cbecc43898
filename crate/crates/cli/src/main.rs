fn main() {
    std::process::exit(streamcolor_cli::run(std::env::args_os()) as i32);
}
