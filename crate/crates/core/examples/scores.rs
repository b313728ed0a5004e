//! Satisfaction, Banzhaf and Rae scores for every actor.

use olfm::scores::{sat_all, InducedGame, ScoreConfig};
use olfm::society::fixtures::seven_actor;

fn main() -> olfm::Result<()> {
    let s = seven_actor();
    let cfg = ScoreConfig::default();
    let table = sat_all(&s, &cfg)?;
    let game = InducedGame::new(&s, &cfg);
    print!("{}", table.to_tsv());
    println!("total satisfaction {}", table.total_sat);
    for i in s.actors() {
        if game.is_dummy(i)? {
            println!("actor {i} is a dummy (rae {})", game.rae(i)?);
        }
    }
    Ok(())
}
