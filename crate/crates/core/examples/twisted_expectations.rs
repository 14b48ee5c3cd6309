//! Character-twisted moments `E_G[χ_γ p_λ]` by two independent routes.
//!
//! cargo run --example twisted_expectations

use lieavg::expectation::{admissible_betas, expect_twisted_route_a, expect_twisted_route_b};
use lieavg::partition::enumerate;
use lieavg::{Family, GroupSpec, Partition};
use num_traits::Zero;

fn main() -> lieavg::Result<()> {
    let lambda: Partition = "2,1,1".parse()?;
    for family in Family::ALL {
        let g = GroupSpec::stable(family);
        println!("{g}, lambda = ({lambda})");
        for w in 0..=lambda.weight() {
            for gamma in enumerate(w)? {
                let a = expect_twisted_route_a(&g, &gamma, &lambda)?;
                let b = expect_twisted_route_b(&g, &gamma, &lambda)?;
                if !a.is_zero() {
                    println!("  gamma = ({gamma}): {b}  (route A {a})");
                }
            }
        }
        let betas: Vec<String> = admissible_betas(family, 4)?.iter().map(|b| format!("({b})")).collect();
        println!("  beta summed over at weight 4: {}", betas.join(" "));
    }
    Ok(())
}
