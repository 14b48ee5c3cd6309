//! Littlewood-Richardson coefficients, Schur products and the branching
//! from `U(m)` to the symplectic and orthogonal groups.
//!
//! cargo run --example branching -- 3,2,1

use lieavg::lr::{branching_decomposition, lr_coefficient, schur_product};
use lieavg::{Family, Partition};

fn main() -> lieavg::Result<()> {
    let lambda: Partition = std::env::args().nth(1).unwrap_or_else(|| "3,2,1".into()).parse()?;
    let mu: Partition = "2,1".parse()?;
    println!("c^({lambda})_(({mu}),({mu})) = {}", lr_coefficient(&lambda, &mu, &mu));

    let terms: Vec<String> = schur_product(&mu, &mu)
        .iter()
        .map(|(l, c)| format!("{c} s[{l}]"))
        .collect();
    println!("s[{mu}]^2 = {}", terms.join(" + "));

    for family in [Family::Sp, Family::SoOdd] {
        let target = branching_decomposition(&lambda, family);
        let terms: Vec<String> = target
            .coeffs
            .iter()
            .map(|(m, c)| format!("{c} chi[{m}]"))
            .collect();
        println!("s[{lambda}] on {family}: {}", terms.join(" + "));
    }
    Ok(())
}
