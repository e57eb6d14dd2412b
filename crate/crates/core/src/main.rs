fn main() {
    holeweaver::cli::main()
}
