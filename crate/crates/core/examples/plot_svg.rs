//! Writes an SVG of the astroid minimizer and eight competitors through the
//! command-line entry point.
//!
//! cargo run --example plot_svg [out.svg]

fn main() {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| std::env::temp_dir().join("astroid.svg").display().to_string());
    let args: Vec<String> = ["calib-geo", "plot", "astroid", "--competitors", "8", "--out", &out]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let code = calib_geo::cli::run(&args);
    if code == 0 {
        println!("wrote {out}");
    }
    std::process::exit(code);
}
