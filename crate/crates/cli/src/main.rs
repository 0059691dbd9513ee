fn main() { println!("ncx"); }
