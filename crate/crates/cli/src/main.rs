fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("WALLKIT_LOG")).init();
    std::process::exit(wallkit::commands::main_with_args(std::env::args().collect()));
}
