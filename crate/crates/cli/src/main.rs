fn main() {
    println!("valsg");
}
