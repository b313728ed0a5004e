//! Score a random 20-actor society with several worker counts.

use std::time::Instant;

use olfm::generate::random_society;
use olfm::scores::{sat_all, ScoreConfig};
use olfm::{DecisionRule, TieRule};

fn main() -> olfm::Result<()> {
    let s = random_society(20, &[7, 7, 6], 0.5, DecisionRule::Unanimity)?;
    // even actor count, so split votes need a tie rule
    let cfg = ScoreConfig::default().with_ties(TieRule::OnesWin);
    let mut first = None;
    for workers in [1, 2, 4, 8] {
        let t = Instant::now();
        let table = sat_all(&s, &cfg.with_workers(workers))?;
        println!("{workers} workers: {:.2?}", t.elapsed());
        match &first {
            None => first = Some(table),
            Some(f) => assert_eq!(f, &table),
        }
    }
    print!("{}", first.expect("ran").to_tsv());
    Ok(())
}
