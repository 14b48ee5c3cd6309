use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::expectation;
use crate::fourier::FourierData;
use crate::group::{Family, GroupSpec};
use crate::matching;
use crate::partition::{self, double_factorial_odd};
use crate::szego;

const MAX_REPORTED_FAILURES: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct SelftestCheck {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<SelftestCheck>,
    pub passed: bool,
}

struct Tally {
    name: &'static str,
    cases: usize,
    failed: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn finish(self) -> SelftestCheck {
        SelftestCheck {
            name: self.name.to_string(),
            cases: self.cases,
            passed: self.failed == 0,
            failures: self.failures,
        }
    }
}

/// Cross-validate the independent computation paths against each other.
pub fn selftest() -> Result<SelftestReport> {
    let mut checks = Vec::new();

    let mut routes = Tally::new("twisted expectation: route A = route B, |lambda| <= 6");
    for family in Family::ALL {
        let group = GroupSpec::stable(family);
        for lambda in partition::enumerate_up_to(6)? {
            for gamma in partition::enumerate_up_to(lambda.weight())? {
                let a = expectation::expect_twisted_route_a(&group, &gamma, &lambda)?;
                let b = expectation::expect_twisted_route_b(&group, &gamma, &lambda)?;
                routes.check(a == b, || format!("{family} gamma=({gamma}) lambda=({lambda}): {a} vs {b}"));
            }
        }
    }
    checks.push(routes.finish());

    let mut g = Tally::new("g: closed form = brute force, |lambda| <= 10");
    for k in (0..=10).step_by(2) {
        for lambda in partition::enumerate(k)? {
            let closed = matching::g_closed(&lambda);
            let brute = matching::g_bruteforce(&lambda)?;
            g.check(closed == brute, || format!("({lambda}): {closed} vs {brute}"));
        }
    }
    checks.push(g.finish());

    let mut rains = Tally::new("bounded involutions reach (k-1)!! once 2n >= k");
    for k in (2..=10).step_by(2) {
        let count = matching::fpf_involutions_lds(k, k)?;
        let all = double_factorial_odd(k / 2);
        rains.check(count == all, || format!("k={k}: {count} vs {all}"));
    }
    checks.push(rains.finish());

    let mut ratio = Tally::new("ratio: character sum = Schur specialization, |gamma| <= 6");
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..5 {
        let f = FourierData::new(
            BigRational::from_integer(BigInt::from(0)),
            (1..=6).map(|i| {
                let num: i64 = rng.random_range(-9..=9);
                let den: i64 = rng.random_range(1..=9);
                (i, BigRational::new(num.into(), den.into()))
            }),
        )?;
        for gamma in partition::enumerate_up_to(6)? {
            let a = szego::ratio_character_sum(&gamma, &f)?;
            let b = szego::ratio_schur_specialization(&gamma, &f)?;
            ratio.check(a == b, || format!("gamma=({gamma}) f={f}: {a} vs {b}"));
        }
    }
    checks.push(ratio.finish());

    let passed = checks.iter().all(|c| c.passed);
    Ok(SelftestReport { checks, passed })
}
