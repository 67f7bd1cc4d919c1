fn main() {
    let code = sparse_qsim::cli::main_with_args(std::env::args_os());
    std::process::exit(code);
}
