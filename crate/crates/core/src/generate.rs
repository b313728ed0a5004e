//! Seeded random layered societies.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rule::DecisionRule;
use crate::society::Society;

/// Random society with the given layer sizes. Edges only join consecutive
/// layers, each sampled with probability `density`; every actor below
/// layer 1 keeps at least one predecessor. Actor labels are shuffled.
/// Even sizes are allowed; ties are then up to the caller's tie rule.
pub fn random_society(seed: u64, layer_sizes: &[usize], density: f64, rule: DecisionRule) -> Result<Society> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_society_with(&mut rng, layer_sizes, density, rule)
}

pub fn random_society_with<R: Rng>(
    rng: &mut R,
    layer_sizes: &[usize],
    density: f64,
    rule: DecisionRule,
) -> Result<Society> {
    if layer_sizes.is_empty() || layer_sizes.contains(&0) {
        return Err(Error::InvalidParams("every layer needs at least one actor".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidParams(format!("density {density} outside [0, 1]")));
    }
    let n: usize = layer_sizes.iter().sum();
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(rng);
    let mut layers = Vec::with_capacity(layer_sizes.len());
    let mut next = 0;
    for &size in layer_sizes {
        layers.push(labels[next..next + size].to_vec());
        next += size;
    }
    let mut edges = Vec::new();
    for pair in layers.windows(2) {
        let (upper, lower) = (&pair[0], &pair[1]);
        for &b in lower {
            let before = edges.len();
            for &a in upper {
                if rng.gen_bool(density) {
                    edges.push((a, b));
                }
            }
            if edges.len() == before {
                let a = upper[rng.gen_range(0..upper.len())];
                edges.push((a, b));
            }
        }
    }
    Society::new(n, edges, rule)
}

/// Splits `n` actors into between 1 and `max_layers` non-empty layers.
pub fn random_layer_sizes<R: Rng>(rng: &mut R, n: usize, max_layers: usize) -> Vec<usize> {
    let k = rng.gen_range(1..=max_layers.clamp(1, n.max(1)));
    let mut sizes = vec![1; k];
    for _ in k..n {
        let slot = rng.gen_range(0..k);
        sizes[slot] += 1;
    }
    sizes
}
