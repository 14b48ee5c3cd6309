//! Eigenvalue angles and Weyl characters of sampled group elements.
//!
//! cargo run --example weyl_characters

use lieavg::haar::{eval_weyl_character, half_spectrum, sample, SignedWeight, Tolerances};
use lieavg::szego::weyl_dimension;
use lieavg::{Family, GroupSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lieavg::Result<()> {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for family in Family::ALL {
        let g = GroupSpec::finite(family, 3);
        let s = sample(&g, &mut rng, 2, &tol)?;
        let h = half_spectrum(&s, &tol)?;
        println!("{g}: tr g = {:.6}, angles {:.4?}", s.trace_power(1), h.angles);
        for gamma in ["1", "1,1", "2", "2,1"] {
            let w: SignedWeight = gamma.parse()?;
            let chi = eval_weyl_character(&w, &h, &tol)?;
            let dim = weyl_dimension(family, 3, &w.shape)?;
            println!("  chi[{w}] = {:+.6} (dimension {dim})", chi.re);
        }
    }
    Ok(())
}
