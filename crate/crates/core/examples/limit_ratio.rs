//! Limits of `E[χ_γ Φ]/E[Φ]`, the Johansson limit, and the exact truncated
//! series at finite rank.
//!
//! cargo run --example limit_ratio -- "c1=3/10,c2=-1/10"

use lieavg::szego::{
    expect_phi_series, fixed_eigenvalue_factor, johansson_limit, ratio_character_sum, ratio_schur_specialization,
};
use lieavg::{Family, FourierData, GroupSpec, Partition};
use num_rational::BigRational;

fn main() -> lieavg::Result<()> {
    let coeffs = std::env::args().nth(1).unwrap_or_else(|| "c1=3/10".to_string());
    let f: FourierData<BigRational> = coeffs.parse()?;
    println!("f: {f}");
    for gamma in ["1", "2", "1,1", "2,1"] {
        let gamma: Partition = gamma.parse()?;
        let r = ratio_schur_specialization(&gamma, &f)?;
        assert_eq!(r, ratio_character_sum(&gamma, &f)?);
        println!("R(({gamma})) = {r}");
    }
    for family in Family::ALL {
        let limit = johansson_limit(family, &f);
        let scale = fixed_eigenvalue_factor(family, &f);
        print!("{family}: limit {limit:.6}");
        for n in [2, 4, 6, 8] {
            let s = expect_phi_series(&GroupSpec::finite(family, n), &Partition::empty(), &f, n)?;
            print!("  n={n}: {:.6}", s.value() / scale);
        }
        println!();
    }
    Ok(())
}
