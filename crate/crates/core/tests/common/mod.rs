//! Brute-force reference model shared by the integration tests.
//!
//! It evaluates each actor recursively from its predecessors (no layer
//! ordering, no bitmasks) and counts scores straight from their set
//! definitions over `Vec<bool>` vectors.

#![allow(dead_code)]

use std::collections::BTreeSet;

use olfm::{ActorId, DecisionRule, Society};

pub struct Oracle {
    n: usize,
    preds: Vec<Vec<usize>>,
    /// `(num, den)` for the fraction rule, `None` for unanimity.
    q: Option<(u64, u64)>,
}

impl Oracle {
    pub fn new(n: usize, edges: &[(usize, usize)], q: Option<(u64, u64)>) -> Self {
        let mut preds = vec![Vec::new(); n + 1];
        for &(a, b) in edges {
            preds[b].push(a);
        }
        Oracle { n, preds, q }
    }

    pub fn of(s: &Society) -> Self {
        let edges: Vec<(usize, usize)> = s.edges().iter().map(|&(a, b)| (a.get(), b.get())).collect();
        let q = match s.rule() {
            DecisionRule::Unanimity => None,
            DecisionRule::Fraction(f) => Some((f.numerator(), f.denominator())),
        };
        Oracle::new(s.n(), &edges, q)
    }

    /// `x[k - 1]` is actor `k`.
    fn value(&self, actor: usize, x: &[bool], memo: &mut Vec<Option<bool>>) -> bool {
        if let Some(v) = memo[actor] {
            return v;
        }
        let own = x[actor - 1];
        let preds = self.preds[actor].clone();
        let v = if preds.is_empty() {
            own
        } else {
            let vals: Vec<bool> = preds.iter().map(|&p| self.value(p, x, memo)).collect();
            let ones = vals.iter().filter(|&&b| b).count() as u64;
            let zeros = vals.len() as u64 - ones;
            match self.q {
                None => {
                    if zeros == 0 {
                        true
                    } else if ones == 0 {
                        false
                    } else {
                        own
                    }
                }
                Some((num, den)) => {
                    let t = num * vals.len() as u64 / den;
                    if ones > t {
                        true
                    } else if zeros > t {
                        false
                    } else {
                        own
                    }
                }
            }
        };
        memo[actor] = Some(v);
        v
    }

    pub fn collective(&self, x: &[bool]) -> Vec<bool> {
        let mut memo = vec![None; self.n + 1];
        (1..=self.n).map(|a| self.value(a, x, &mut memo)).collect()
    }

    /// `None` on a tie.
    pub fn decide(&self, x: &[bool]) -> Option<bool> {
        let c = self.collective(x);
        let ones = c.iter().filter(|&&b| b).count();
        let zeros = self.n - ones;
        match ones.cmp(&zeros) {
            std::cmp::Ordering::Greater => Some(true),
            std::cmp::Ordering::Less => Some(false),
            std::cmp::Ordering::Equal => None,
        }
    }

    /// All vectors in binary order, actor 1 most significant.
    pub fn vectors(&self) -> Vec<Vec<bool>> {
        (0..1u64 << self.n)
            .map(|v| (0..self.n).map(|k| v >> (self.n - 1 - k) & 1 == 1).collect())
            .collect()
    }

    fn wins(&self, coalition: &BTreeSet<usize>) -> bool {
        let x: Vec<bool> = (1..=self.n).map(|a| coalition.contains(&a)).collect();
        self.decide(&x).expect("odd society")
    }

    fn coalitions(&self) -> Vec<BTreeSet<usize>> {
        self.vectors()
            .into_iter()
            .map(|x| (1..=self.n).filter(|&a| x[a - 1]).collect())
            .collect()
    }

    pub fn sat(&self, actor: usize) -> u64 {
        self.vectors()
            .iter()
            .filter(|x| self.decide(x).expect("odd society") == x[actor - 1])
            .count() as u64
    }

    pub fn sats(&self) -> Vec<u64> {
        (1..=self.n).map(|a| self.sat(a)).collect()
    }

    pub fn banzhaf(&self, actor: usize) -> u64 {
        self.coalitions()
            .into_iter()
            .filter(|c| {
                let mut without = c.clone();
                without.remove(&actor);
                self.wins(c) && !self.wins(&without)
            })
            .count() as u64
    }

    pub fn total(&self) -> u64 {
        self.vectors()
            .iter()
            .map(|x| {
                let c = self.decide(x).expect("odd society");
                x.iter().filter(|&&b| b == c).count() as u64
            })
            .sum()
    }
}

pub fn bits(text: &str) -> Vec<bool> {
    text.chars().map(|c| c == '1').collect()
}

pub fn text(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

pub fn a(k: usize) -> ActorId {
    ActorId::new(k)
}
