fn main() {
    std::process::exit(jacobian_isogeny::cli::main_from_env());
}
