//! Build a society from an edge list and print each actor's role and layer.

use olfm::{DecisionRule, Society};

fn main() -> olfm::Result<()> {
    let s = Society::new(
        7,
        [(1, 4), (1, 5), (2, 5), (2, 6), (4, 7), (5, 7)],
        DecisionRule::Unanimity,
    )?;
    println!("{} actors in {} layers", s.n(), s.layer_count());
    for i in s.actors() {
        let nb = s.neighbors(i)?;
        let preds: Vec<String> = nb.predecessors.iter().map(|a| a.to_string()).collect();
        println!(
            "actor {i}: {:<11} layer {} predecessors [{}]",
            s.classify(i)?.to_string(),
            s.layer(i)?,
            preds.join(", ")
        );
    }
    // edges that skip a layer are rejected
    let err = Society::new(3, [(1, 2), (2, 3), (1, 3)], DecisionRule::Unanimity).unwrap_err();
    println!("rejected: {err}");
    Ok(())
}
