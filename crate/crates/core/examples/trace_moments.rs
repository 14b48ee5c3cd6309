//! Exact moments `E_G[p_λ]` of trace products, in and below the stable range.
//!
//! cargo run --example trace_moments

use lieavg::expectation::expect_trace_product;
use lieavg::partition::enumerate_up_to;
use lieavg::{Family, GroupSpec, Partition};

fn main() -> lieavg::Result<()> {
    println!("{:<10} {:>6} {:>8} {:>8}", "lambda", "sp", "so-even", "so-odd");
    for lambda in enumerate_up_to(6)? {
        let row: Vec<String> = Family::ALL
            .iter()
            .map(|&f| expect_trace_product(&GroupSpec::stable(f), &lambda).map(|v| v.to_string()))
            .collect::<lieavg::Result<_>>()?;
        println!("{:<10} {:>6} {:>8} {:>8}", format!("({lambda})"), row[0], row[1], row[2]);
    }

    // Below the stable range, Sp(2n) still has exact values for (tr g)^k.
    for n in 1..=3 {
        let g = GroupSpec::finite(Family::Sp, n);
        let values: Vec<String> = (2..=8)
            .step_by(2)
            .map(|k| expect_trace_product(&g, &Partition::rectangle(1, k)).map(|v| v.to_string()))
            .collect::<lieavg::Result<_>>()?;
        println!("Sp({}): E (tr g)^2,4,6,8 = {}", 2 * n, values.join(", "));
    }

    match expect_trace_product(&GroupSpec::finite(Family::SoOdd, 1), &Partition::new(vec![2, 2])) {
        Err(e) => println!("SO(3), (2,2): {e}"),
        Ok(v) => println!("SO(3), (2,2): {v}"),
    }
    Ok(())
}
