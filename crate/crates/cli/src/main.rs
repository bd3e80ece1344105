fn main() {
    std::process::exit(gwcache_cli::main_with_args(std::env::args_os()));
}
