//! Matchings preserved by a permutation, and fixed-point-free involutions
//! with bounded decreasing subsequences.
//!
//! cargo run --example matchings

use lieavg::matching::{fpf_involutions_lds, g_bruteforce, g_closed};
use lieavg::partition::enumerate;

fn main() -> lieavg::Result<()> {
    for lambda in enumerate(6)? {
        println!("g({lambda}) = {} (brute force {})", g_closed(&lambda), g_bruteforce(&lambda)?);
    }
    println!();
    println!("  k involutions with LDS <= 2, 4, 6, 8");
    for k in (2..=12).step_by(2) {
        let row: Vec<String> = [2, 4, 6, 8]
            .iter()
            .map(|&b| fpf_involutions_lds(k, b).map(|c| c.to_string()))
            .collect::<lieavg::Result<_>>()?;
        println!("{k:>3} {}", row.join(" "));
    }
    Ok(())
}
