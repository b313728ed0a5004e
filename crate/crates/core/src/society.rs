//! Layered influence digraphs and actor classification.
//!
//! A [`Society`] is built from an actor count and an edge list. Layers are
//! not part of the input: every actor gets its longest-path depth from the
//! predecessor-free actors (which sit in layer 1), and the graph is rejected
//! unless every edge then steps exactly one layer down.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rule::DecisionRule;

/// Largest society the bitmask representation supports.
pub const MAX_ACTORS: usize = 64;

/// 1-based actor label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActorId(usize);

impl ActorId {
    pub const fn new(label: usize) -> Self {
        ActorId(label)
    }

    /// The 1-based label.
    pub const fn get(self) -> usize {
        self.0
    }

    /// 0-based position, used for bit indexing.
    pub(crate) const fn index(self) -> usize {
        self.0 - 1
    }

    pub(crate) const fn from_index(index: usize) -> Self {
        ActorId(index + 1)
    }
}

impl From<usize> for ActorId {
    fn from(label: usize) -> Self {
        ActorId(label)
    }
}

impl fmt::Display for ActorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ActorClass {
    OpinionLeader,
    Follower,
    Independent,
    Mediator,
}

impl ActorClass {
    fn from_degrees(indegree: u32, outdegree: u32) -> Self {
        match (indegree == 0, outdegree == 0) {
            (true, false) => ActorClass::OpinionLeader,
            (false, true) => ActorClass::Follower,
            (true, true) => ActorClass::Independent,
            (false, false) => ActorClass::Mediator,
        }
    }

    /// Single-letter tag: `L`, `F`, `I` or `M`.
    pub fn letter(self) -> char {
        match self {
            ActorClass::OpinionLeader => 'L',
            ActorClass::Follower => 'F',
            ActorClass::Independent => 'I',
            ActorClass::Mediator => 'M',
        }
    }

    /// Opinion leaders and independent actors never change their decision.
    pub fn is_source(self) -> bool {
        matches!(self, ActorClass::OpinionLeader | ActorClass::Independent)
    }
}

impl fmt::Display for ActorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ActorClass::OpinionLeader => "leader",
            ActorClass::Follower => "follower",
            ActorClass::Independent => "independent",
            ActorClass::Mediator => "mediator",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub indegree: u32,
    pub outdegree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neighborhood {
    pub predecessors: Vec<ActorId>,
    pub successors: Vec<ActorId>,
    pub degree: DegreeProfile,
}

/// A validated OLFM society. Immutable; edits return new values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Society {
    n: usize,
    edges: Vec<(ActorId, ActorId)>,
    rule: DecisionRule,
    preds: Vec<u64>,
    succs: Vec<u64>,
    layers: Vec<u32>,
    classes: Vec<ActorClass>,
    /// Non-source actors, sorted by layer.
    order: Vec<usize>,
}

fn mask_members(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let bit = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(bit)
    })
}

impl Society {
    /// Builds and validates a society from 1-based edges.
    pub fn new<I>(n: usize, edges: I, rule: DecisionRule) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::InvalidParams("a society needs at least one actor".into()));
        }
        if n > MAX_ACTORS {
            return Err(Error::TooManyActors { n, max: MAX_ACTORS });
        }
        let mut preds = vec![0u64; n];
        let mut succs = vec![0u64; n];
        let mut list = Vec::new();
        for (a, b) in edges {
            for actor in [a, b] {
                if actor == 0 || actor > n {
                    return Err(Error::InvalidActor { actor, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let (ai, bi) = (a - 1, b - 1);
            if succs[ai] & (1 << bi) != 0 {
                return Err(Error::DuplicateEdge(a, b));
            }
            succs[ai] |= 1 << bi;
            preds[bi] |= 1 << ai;
            list.push((ActorId::new(a), ActorId::new(b)));
        }
        list.sort_unstable();

        let layers = longest_path_layers(&preds, &succs)?;
        for &(a, b) in &list {
            let (la, lb) = (layers[a.index()], layers[b.index()]);
            if lb != la + 1 {
                return Err(Error::NotLayered(format!(
                    "edge ({a}, {b}) joins layer {la} to layer {lb}"
                )));
            }
        }

        let classes: Vec<ActorClass> = (0..n)
            .map(|i| ActorClass::from_degrees(preds[i].count_ones(), succs[i].count_ones()))
            .collect();
        let mut order: Vec<usize> = (0..n).filter(|&i| preds[i] != 0).collect();
        order.sort_by_key(|&i| (layers[i], i));

        Ok(Society {
            n,
            edges: list,
            rule,
            preds,
            succs,
            layers,
            classes,
            order,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rule(&self) -> DecisionRule {
        self.rule
    }

    /// Same graph under another influence rule.
    pub fn with_rule(&self, rule: DecisionRule) -> Society {
        Society { rule, ..self.clone() }
    }

    /// Sorted edge list.
    pub fn edges(&self) -> &[(ActorId, ActorId)] {
        &self.edges
    }

    pub fn has_edge(&self, i: ActorId, j: ActorId) -> bool {
        self.check(i).is_ok() && self.check(j).is_ok() && self.succs[i.index()] & (1 << j.index()) != 0
    }

    pub fn actors(&self) -> impl Iterator<Item = ActorId> {
        (1..=self.n).map(ActorId::new)
    }

    pub(crate) fn check(&self, i: ActorId) -> Result<usize> {
        if i.get() == 0 || i.get() > self.n {
            Err(Error::InvalidActor {
                actor: i.get(),
                n: self.n,
            })
        } else {
            Ok(i.index())
        }
    }

    pub fn classify(&self, i: ActorId) -> Result<ActorClass> {
        Ok(self.classes[self.check(i)?])
    }

    pub fn layer(&self, i: ActorId) -> Result<u32> {
        Ok(self.layers[self.check(i)?])
    }

    /// Number of layers `k`.
    pub fn layer_count(&self) -> u32 {
        self.layers.iter().copied().max().unwrap_or(1)
    }

    pub fn neighbors(&self, i: ActorId) -> Result<Neighborhood> {
        let idx = self.check(i)?;
        let predecessors: Vec<ActorId> = mask_members(self.preds[idx]).map(ActorId::from_index).collect();
        let successors: Vec<ActorId> = mask_members(self.succs[idx]).map(ActorId::from_index).collect();
        let degree = DegreeProfile {
            indegree: predecessors.len() as u32,
            outdegree: successors.len() as u32,
        };
        Ok(Neighborhood {
            predecessors,
            successors,
            degree,
        })
    }

    pub fn degree(&self, i: ActorId) -> Result<DegreeProfile> {
        let idx = self.check(i)?;
        Ok(DegreeProfile {
            indegree: self.preds[idx].count_ones(),
            outdegree: self.succs[idx].count_ones(),
        })
    }

    /// Actors of one class, ascending.
    pub fn members(&self, class: ActorClass) -> Vec<ActorId> {
        self.actors().filter(|&a| self.classes[a.index()] == class).collect()
    }

    /// A new society with `(i, j)` added; layers are recomputed from scratch.
    pub fn add_edge(&self, i: ActorId, j: ActorId) -> Result<Society> {
        self.check(i)?;
        self.check(j)?;
        if self.has_edge(i, j) {
            return Err(Error::DuplicateEdge(i.get(), j.get()));
        }
        let edges = self.edge_pairs().chain(std::iter::once((i.get(), j.get())));
        Society::new(self.n, edges, self.rule)
    }

    /// A new society with `(i, j)` removed.
    pub fn remove_edge(&self, i: ActorId, j: ActorId) -> Result<Society> {
        if !self.has_edge(i, j) {
            return Err(Error::InvalidParams(format!("edge ({i}, {j}) is not present")));
        }
        let edges = self.edge_pairs().filter(|&e| e != (i.get(), j.get()));
        Society::new(self.n, edges, self.rule)
    }

    fn edge_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(a, b)| (a.get(), b.get()))
    }

    pub(crate) fn pred_mask(&self, idx: usize) -> u64 {
        self.preds[idx]
    }

    pub(crate) fn succ_mask(&self, idx: usize) -> u64 {
        self.succs[idx]
    }

    pub(crate) fn eval_order(&self) -> &[usize] {
        &self.order
    }
}

fn longest_path_layers(preds: &[u64], succs: &[u64]) -> Result<Vec<u32>> {
    let n = preds.len();
    let mut remaining: Vec<u32> = preds.iter().map(|p| p.count_ones()).collect();
    let mut layers = vec![1u32; n];
    let mut ready: Vec<usize> = (0..n).filter(|&i| remaining[i] == 0).collect();
    let mut visited = 0;
    while let Some(a) = ready.pop() {
        visited += 1;
        for b in mask_members(succs[a]) {
            layers[b] = layers[b].max(layers[a] + 1);
            remaining[b] -= 1;
            if remaining[b] == 0 {
                ready.push(b);
            }
        }
    }
    if visited < n {
        let stuck = (0..n).find(|&i| remaining[i] > 0).map_or(0, |i| i + 1);
        return Err(Error::NotLayered(format!("cycle through actor {stuck}")));
    }
    Ok(layers)
}

/// On-disk form: `{"n": 7, "edges": [[1,4], ...], "rule": {"type": "unanimity"}}`.
#[derive(Serialize, Deserialize)]
struct SocietyFile {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    rule: DecisionRule,
}

impl Serialize for Society {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SocietyFile {
            n: self.n,
            edges: self.edge_pairs().map(|(a, b)| [a, b]).collect(),
            rule: self.rule,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Society {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = SocietyFile::deserialize(deserializer)?;
        Society::new(file.n, file.edges.into_iter().map(|[a, b]| (a, b)), file.rule).map_err(serde::de::Error::custom)
    }
}

impl Society {
    /// Parses the JSON society format, keeping validation errors typed.
    pub fn from_json(text: &str) -> Result<Society> {
        let file: SocietyFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Society::new(file.n, file.edges.into_iter().map(|[a, b]| (a, b)), file.rule)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("society serializes")
    }
}

/// Fixed societies used throughout the examples and tests.
pub mod fixtures {
    use super::Society;
    use crate::rule::DecisionRule;

    /// Seven actors over three layers with two mediators.
    pub const SEVEN_ACTOR_EDGES: [(usize, usize); 6] = [(1, 4), (1, 5), (2, 5), (2, 6), (4, 7), (5, 7)];
    /// Five actors: three leaders pointing at actor 1, actor 5 independent.
    pub const FAN_IN_EDGES: [(usize, usize); 3] = [(2, 1), (3, 1), (4, 1)];

    pub fn seven_actor() -> Society {
        Society::new(7, SEVEN_ACTOR_EDGES, DecisionRule::Unanimity).expect("valid society")
    }

    pub fn fan_in() -> Society {
        Society::new(5, FAN_IN_EDGES, DecisionRule::Unanimity).expect("valid society")
    }

    /// Actor 1 points at every other actor.
    pub fn star(n: usize) -> Society {
        Society::new(n, (2..=n).map(|j| (1, j)), DecisionRule::Unanimity).expect("valid society")
    }

    /// Two leaders (2 and 3) sharing the follower 1.
    pub fn two_leaders() -> Society {
        Society::new(3, [(2, 1), (3, 1)], DecisionRule::Unanimity).expect("valid society")
    }
}
