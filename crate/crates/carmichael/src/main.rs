fn main() {
    carmichael::cli::run();
}
