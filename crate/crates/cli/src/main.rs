fn main() {
    println!("qvariant");
}
