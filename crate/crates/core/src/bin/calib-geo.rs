fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(calib_geo::cli::run(&args));
}
