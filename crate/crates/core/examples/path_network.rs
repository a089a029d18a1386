use matchroute::sortnet::odd_even_path_network;

fn main() -> matchroute::Result<()> {
    let net = odd_even_path_network(8);
    println!("depth {}", net.depth());
    println!("{:?}", net.run(&[5, 1, 7, 3, 8, 2, 6, 4]));
    assert!(net.verify_zero_one()?);
    print!("{}", net.to_text());
    Ok(())
}
