//! Propagate a few initial opinions through the seven-actor society.

use olfm::society::fixtures::seven_actor;
use olfm::DecisionVector;

fn main() -> olfm::Result<()> {
    let s = seven_actor();
    for text in ["0100101", "0001111", "1100000", "1011100"] {
        let x: DecisionVector = text.parse()?;
        let c = s.propagate(x)?;
        println!("x={x} c={c} C={} ({} yes votes)", s.decide(x)?, c.count_ones());
    }
    Ok(())
}
