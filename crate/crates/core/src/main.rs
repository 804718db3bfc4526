fn main() {
    std::process::exit(pivhopf::cli::dispatch(std::env::args_os()));
}
