//! Randomized axiom checks, first over every admissible influencer, then with
//! influencers restricted to leaders and independent actors.
//!
//! Pass a seed as the first argument to change the sample.

use olfm::suite::{run_axiom_suite, InfluencerDomain, SuiteConfig};

fn main() -> olfm::Result<()> {
    let seed = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    for influencers in [InfluencerDomain::Any, InfluencerDomain::Sources] {
        let cfg = SuiteConfig {
            seed,
            trials: 100,
            influencers,
            ..Default::default()
        };
        println!("== influencers: {influencers:?}");
        print!("{}", run_axiom_suite(&cfg)?.render());
    }
    Ok(())
}
