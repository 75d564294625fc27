fn main() {
    std::process::exit(toric_dk::cli::run_cli());
}
