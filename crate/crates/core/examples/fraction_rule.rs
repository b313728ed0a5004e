//! Compare the unanimity rule with fraction rules on a three-leader fan-in.

use olfm::scores::{sat_all, ScoreConfig};
use olfm::society::fixtures::fan_in;
use olfm::{DecisionRule, DecisionVector, FractionValue};

fn main() -> olfm::Result<()> {
    let base = fan_in();
    let x: DecisionVector = "01100".parse()?;
    let mut rules = vec![DecisionRule::Unanimity];
    for q in ["1/2", "0.6", "2/3", "3/4"] {
        rules.push(DecisionRule::Fraction(q.parse::<FractionValue>()?));
    }
    for rule in rules {
        let s = base.with_rule(rule);
        let sats = sat_all(&s, &ScoreConfig::default())?.sat_vector();
        println!("{:<22} c={} sat={sats:?}", rule.to_string(), s.propagate(x)?);
    }
    Ok(())
}
