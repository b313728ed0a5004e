//! Shift the satisfaction score by one on a single actor and show which
//! axioms notice.

use olfm::axioms::{Perturbed, Satisfaction, Verifier};
use olfm::scores::ScoreConfig;
use olfm::society::fixtures::seven_actor;
use olfm::suite::{run_negative_control, SuiteConfig};
use olfm::ActorId;

fn main() -> olfm::Result<()> {
    let cfg = ScoreConfig::default();
    let bent = Perturbed {
        inner: Satisfaction(cfg),
        actor: ActorId::new(4),
        delta: 1,
    };
    let report = Verifier::new(bent, cfg).check_normalization(&seven_actor())?;
    println!(
        "normalization with actor 4 shifted: holds={} {}",
        report.holds, report.context
    );

    let summary = run_negative_control(&SuiteConfig {
        seed: 3,
        trials: 50,
        ..Default::default()
    })?;
    print!("{}", summary.render());
    Ok(())
}
