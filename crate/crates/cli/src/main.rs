fn main() {
    println!("capgeo");
}
