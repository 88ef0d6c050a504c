fn main() {
    // replaced by the CLI entry point once the `cli` module lands
}
