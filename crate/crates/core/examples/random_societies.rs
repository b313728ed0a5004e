//! Generate seeded random layered societies and round-trip them through JSON.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use olfm::generate::{random_layer_sizes, random_society_with};
use olfm::{DecisionRule, Society};

fn main() -> olfm::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for n in [5, 7, 9] {
        let sizes = random_layer_sizes(&mut rng, n, 3);
        let s = random_society_with(&mut rng, &sizes, 0.5, DecisionRule::fraction(2, 3)?)?;
        let json = s.to_json();
        assert_eq!(Society::from_json(&json)?, s);
        println!("layers {sizes:?}: {json}");
    }
    Ok(())
}
