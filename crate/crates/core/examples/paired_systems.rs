//! Add one influence edge and check how the scores of both ends move.

use olfm::axioms::{PairedSystems, Verifier};
use olfm::scores::{sat_all, ScoreConfig};
use olfm::society::fixtures::seven_actor;
use olfm::ActorId;

fn main() -> olfm::Result<()> {
    let full = seven_actor();
    let (i, j) = (ActorId::new(1), ActorId::new(5));
    let base = full.remove_edge(i, j)?;
    let pair = PairedSystems::new(base, i, j)?;
    let cfg = ScoreConfig::default();
    println!("before {:?}", sat_all(pair.base(), &cfg)?.sat_vector());
    println!("after  {:?}", sat_all(pair.extended(), &cfg)?.sat_vector());

    let v = Verifier::satisfaction(cfg);
    let report = v.check_equal_abs_change(&pair)?;
    println!("{}: holds={} branch={:?}", report.axiom, report.holds, report.branch);
    let report = v.check_power_neutrality_2(&pair, ActorId::new(2))?;
    println!("{}: holds={} branch={:?}", report.axiom, report.holds, report.branch);
    println!("{}", v.check_normalization(pair.extended())?.to_json());
    Ok(())
}
