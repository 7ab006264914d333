fn main() {
    println!("linkless");
}
