//! Haar sampling checks of exact moments, below the stable range too.
//!
//! cargo run --release --example monte_carlo

use lieavg::expectation::{expect_trace_product, expect_twisted};
use lieavg::haar::{estimate_batch, McConfig, Observable, SignedWeight};
use lieavg::{Family, GroupSpec, Partition};
use num_traits::ToPrimitive;

fn main() -> lieavg::Result<()> {
    let config = McConfig::new(20_000, 1);
    let lambdas: Vec<Partition> = ["2", "1,1", "2,2", "4", "1,1,1,1"]
        .iter()
        .map(|s| s.parse())
        .collect::<lieavg::Result<_>>()?;
    for family in Family::ALL {
        let g = GroupSpec::finite(family, 4);
        let mut observables: Vec<Observable> = lambdas.iter().cloned().map(Observable::TraceProduct).collect();
        observables.push(Observable::Twisted {
            gamma: SignedWeight::plus("2".parse()?),
            lambda: "2".parse()?,
        });
        let estimates = estimate_batch(&g, &observables, &config)?;
        println!("{g}");
        for (o, e) in observables.iter().zip(&estimates) {
            let exact = match o {
                Observable::TraceProduct(l) => expect_trace_product(&g, l)?,
                Observable::Twisted { gamma, lambda } => expect_twisted(&g, &gamma.shape, lambda)?,
                _ => unreachable!(),
            };
            let x = exact.to_f64().unwrap_or(f64::NAN);
            println!("  {:<16} exact {x:>4}  MC {:>8.4} +- {:.4}  z = {:+.2}", o.label(), e.mean, e.stderr, e.z_score(x));
        }
    }

    // Sp(2) = SU(2) is far below the stable range for (tr g)^4.
    let g = GroupSpec::finite(Family::Sp, 1);
    let ones = Partition::rectangle(1, 4);
    let e = estimate_batch(&g, &[Observable::TraceProduct(ones.clone())], &config)?.remove(0);
    println!("Sp(2): E (tr g)^4 exact {} MC {:.4} +- {:.4}", expect_trace_product(&g, &ones)?, e.mean, e.stderr);
    Ok(())
}
