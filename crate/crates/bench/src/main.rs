fn main() {
    std::process::exit(spm_bench::cli::main(std::env::args_os()));
}
