//! Mechanical checks of the satisfaction axioms on single societies and on
//! pairs of societies that differ by one added edge.
//!
//! Checkers are generic over the score under test so that deliberately
//! wrong scores can be shown to break the axioms.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scores::{normalization_total, sat_all, ScoreConfig};
use crate::society::{ActorClass, ActorId, Society};

/// A score: one integer per actor of a society, indexed by `actor - 1`.
pub trait ScoreFn: Sync {
    fn scores(&self, s: &Society) -> Result<Vec<i64>>;
}

impl<F> ScoreFn for F
where
    F: Fn(&Society) -> Result<Vec<i64>> + Sync,
{
    fn scores(&self, s: &Society) -> Result<Vec<i64>> {
        self(s)
    }
}

/// The satisfaction score.
#[derive(Debug, Clone, Copy, Default)]
pub struct Satisfaction(pub ScoreConfig);

impl ScoreFn for Satisfaction {
    fn scores(&self, s: &Society) -> Result<Vec<i64>> {
        Ok(sat_all(s, &self.0)?.actors.iter().map(|a| a.sat as i64).collect())
    }
}

/// Another score shifted by `delta` on one actor, in every society.
#[derive(Debug, Clone, Copy)]
pub struct Perturbed<F> {
    pub inner: F,
    pub actor: ActorId,
    pub delta: i64,
}

impl<F: ScoreFn> ScoreFn for Perturbed<F> {
    fn scores(&self, s: &Society) -> Result<Vec<i64>> {
        let mut v = self.inner.scores(s)?;
        if let Some(slot) = v.get_mut(self.actor.get().wrapping_sub(1)) {
            *slot += self.delta;
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    Sym,
    Dict,
    DictInd,
    EqGain,
    EqAbsChange,
    OppGain,
    HorizNeut,
    PowerNeut2,
    Norm,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Which signed equality of a disjunctive axiom held.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    First,
    Second,
    /// Both deltas are zero.
    Both,
}

/// One compared pair of integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub actor: ActorId,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub holds: bool,
    pub branch: Option<Branch>,
    pub witnesses: Vec<Witness>,
    pub context: String,
}

impl AxiomReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Two societies on the same actors, the second with one extra edge `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairedSystems {
    base: Society,
    extended: Society,
    added: (ActorId, ActorId),
}

impl PairedSystems {
    pub fn new(base: Society, i: ActorId, j: ActorId) -> Result<Self> {
        let extended = base.add_edge(i, j)?;
        Ok(PairedSystems {
            base,
            extended,
            added: (i, j),
        })
    }

    /// Pairs two existing societies, which must differ by exactly one edge.
    pub fn from_societies(base: Society, extended: Society) -> Result<Self> {
        if base.n() != extended.n() {
            return Err(Error::PreconditionUnmet("societies differ in size".into()));
        }
        let extra: Vec<_> = extended.edges().iter().filter(|e| !base.edges().contains(e)).collect();
        if extra.len() != 1 || extended.edges().len() != base.edges().len() + 1 {
            return Err(Error::PreconditionUnmet(
                "extended society must add exactly one edge to the base".into(),
            ));
        }
        let added = *extra[0];
        Ok(PairedSystems { base, extended, added })
    }

    pub fn base(&self) -> &Society {
        &self.base
    }

    pub fn extended(&self) -> &Society {
        &self.extended
    }

    pub fn added_edge(&self) -> (ActorId, ActorId) {
        self.added
    }

    fn describe(&self) -> String {
        let (i, j) = self.added;
        format!(
            "n={} base_edges={} added=({i}, {j})",
            self.base.n(),
            self.base.edges().len()
        )
    }
}

fn unmet(msg: impl Into<String>) -> Error {
    Error::PreconditionUnmet(msg.into())
}

fn disjunction(lhs: i64, first: i64, second: i64) -> Option<Branch> {
    match (lhs == first, lhs == second) {
        (true, true) => Some(Branch::Both),
        (true, false) => Some(Branch::First),
        (false, true) => Some(Branch::Second),
        (false, false) => None,
    }
}

/// Runs axiom checks for one score function.
pub struct Verifier<F> {
    score: F,
    cfg: ScoreConfig,
}

impl Verifier<Satisfaction> {
    pub fn satisfaction(cfg: ScoreConfig) -> Self {
        Verifier {
            score: Satisfaction(cfg),
            cfg,
        }
    }
}

impl<F: ScoreFn> Verifier<F> {
    /// `cfg` drives the enumeration on the right-hand side of normalization.
    pub fn new(score: F, cfg: ScoreConfig) -> Self {
        Verifier { score, cfg }
    }

    fn eval(&self, s: &Society) -> Result<Vec<i64>> {
        let v = self.score.scores(s)?;
        if v.len() != s.n() {
            return Err(Error::InvalidParams(format!(
                "score function returned {} values for {} actors",
                v.len(),
                s.n()
            )));
        }
        Ok(v)
    }

    /// Score changes `f_{S'}(a) - f_S(a)` across a pair.
    fn deltas(&self, p: &PairedSystems) -> Result<Vec<i64>> {
        let before = self.eval(&p.base)?;
        let after = self.eval(&p.extended)?;
        Ok(after.iter().zip(&before).map(|(a, b)| a - b).collect())
    }

    /// Property 1: actors with identical neighbourhoods score the same.
    pub fn check_symmetry(&self, s: &Society, i: ActorId, j: ActorId) -> Result<AxiomReport> {
        let (ii, jj) = (s.check(i)?, s.check(j)?);
        if ii == jj {
            return Err(unmet("symmetry needs two different actors"));
        }
        if s.pred_mask(ii) != s.pred_mask(jj) || s.succ_mask(ii) != s.succ_mask(jj) {
            return Err(unmet(format!("actors {i} and {j} have different neighbourhoods")));
        }
        let f = self.eval(s)?;
        Ok(AxiomReport {
            axiom: Axiom::Sym,
            holds: f[ii] == f[jj],
            branch: None,
            witnesses: vec![Witness {
                actor: i,
                lhs: f[ii],
                rhs: f[jj],
            }],
            context: format!("n={} i={i} j={j}", s.n()),
        })
    }

    /// Property 2: an actor pointing at everyone else scores `2^n`.
    pub fn check_dictator(&self, s: &Society, i: ActorId) -> Result<AxiomReport> {
        let ii = s.check(i)?;
        let others = crate::decision::low_mask(s.n()) & !(1 << ii);
        if s.succ_mask(ii) != others {
            return Err(unmet(format!("actor {i} does not point at every other actor")));
        }
        let f = self.eval(s)?;
        let target = 1i64 << s.n();
        Ok(AxiomReport {
            axiom: Axiom::Dict,
            holds: f[ii] == target,
            branch: None,
            witnesses: vec![Witness {
                actor: i,
                lhs: f[ii],
                rhs: target,
            }],
            context: format!("n={} i={i}", s.n()),
        })
    }

    /// Property 3: a single-predecessor actor scores the same in both
    /// societies, namely `2^(n-1)`.
    pub fn check_dictated_independence(&self, s1: &Society, s2: &Society, i: ActorId) -> Result<AxiomReport> {
        if s1.n() != s2.n() {
            return Err(unmet("societies differ in size"));
        }
        let ii = s1.check(i)?;
        if s1.pred_mask(ii).count_ones() != 1 || s2.pred_mask(ii).count_ones() != 1 {
            return Err(unmet(format!(
                "actor {i} needs exactly one predecessor in both societies"
            )));
        }
        let (f1, f2) = (self.eval(s1)?, self.eval(s2)?);
        let half = 1i64 << (s1.n() - 1);
        Ok(AxiomReport {
            axiom: Axiom::DictInd,
            holds: f1[ii] == f2[ii] && f1[ii] == half,
            branch: None,
            witnesses: vec![
                Witness {
                    actor: i,
                    lhs: f1[ii],
                    rhs: f2[ii],
                },
                Witness {
                    actor: i,
                    lhs: f1[ii],
                    rhs: half,
                },
            ],
            context: format!("n={} i={i}", s1.n()),
        })
    }

    /// Property 4: a follower gaining a leader gains what the leader gains.
    pub fn check_equal_gain(&self, p: &PairedSystems) -> Result<AxiomReport> {
        let (i, j) = p.added;
        if !p.base.classify(i)?.is_source() {
            return Err(unmet(format!("actor {i} is not a leader or independent in the base")));
        }
        if p.base.classify(j)? != ActorClass::Follower {
            return Err(unmet(format!("actor {j} is not a follower in the base")));
        }
        let d = self.deltas(p)?;
        let (di, dj) = (d[i.index()], d[j.index()]);
        Ok(AxiomReport {
            axiom: Axiom::EqGain,
            holds: di == dj,
            branch: None,
            witnesses: vec![Witness {
                actor: i,
                lhs: di,
                rhs: dj,
            }],
            context: p.describe(),
        })
    }

    /// Property 4b: `|Δf(i)| = |Δf(j)|` across consecutive layers.
    pub fn check_equal_abs_change(&self, p: &PairedSystems) -> Result<AxiomReport> {
        let (i, j) = p.added;
        if p.extended.layer(i)? + 1 != p.extended.layer(j)? {
            return Err(unmet(format!("({i}, {j}) does not join consecutive layers")));
        }
        if p.base.classify(j)? == ActorClass::Independent {
            return Err(unmet(format!("actor {j} is independent in the base")));
        }
        let d = self.deltas(p)?;
        let (di, dj) = (d[i.index()], d[j.index()]);
        let branch = disjunction(di, dj, -dj);
        Ok(AxiomReport {
            axiom: Axiom::EqAbsChange,
            holds: branch.is_some(),
            branch,
            witnesses: vec![Witness {
                actor: i,
                lhs: di,
                rhs: dj,
            }],
            context: p.describe(),
        })
    }

    /// Properties 5 and 5b: an independent actor gaining an influencer.
    /// When the influencer is a leader or independent only the opposite-sign
    /// equality counts.
    pub fn check_opposite_gain(&self, p: &PairedSystems) -> Result<AxiomReport> {
        let (i, j) = p.added;
        if p.base.classify(j)? != ActorClass::Independent {
            return Err(unmet(format!("actor {j} is not independent in the base")));
        }
        let strict = p.base.classify(i)?.is_source();
        let d = self.deltas(p)?;
        let (di, dj) = (d[i.index()], d[j.index()]);
        let branch = match disjunction(di, -dj, dj) {
            Some(Branch::Second) if strict => None,
            other => other,
        };
        Ok(AxiomReport {
            axiom: Axiom::OppGain,
            holds: branch.is_some(),
            branch,
            witnesses: vec![Witness {
                actor: i,
                lhs: di,
                rhs: -dj,
            }],
            context: format!("{} strict={strict}", p.describe()),
        })
    }

    /// Property 6: a new leader's gain is an old leader's loss.
    pub fn check_horizontal_neutrality(&self, p: &PairedSystems, h: ActorId) -> Result<AxiomReport> {
        let (i, j) = p.added;
        let hh = p.base.check(h)?;
        if h == i || h == j {
            return Err(unmet("h must differ from i and j"));
        }
        if !p.base.classify(i)?.is_source() {
            return Err(unmet(format!("actor {i} is not a leader or independent in the base")));
        }
        if p.base.classify(j)? != ActorClass::Follower {
            return Err(unmet(format!("actor {j} is not a follower in the base")));
        }
        if p.base.classify(h)? != ActorClass::OpinionLeader || p.base.pred_mask(j.index()) >> hh & 1 == 0 {
            return Err(unmet(format!("actor {h} is not a leader of {j} in the base")));
        }
        let d = self.deltas(p)?;
        let (di, dh) = (d[i.index()], d[hh]);
        Ok(AxiomReport {
            axiom: Axiom::HorizNeut,
            holds: di == -dh,
            branch: None,
            witnesses: vec![Witness {
                actor: i,
                lhs: di,
                rhs: -dh,
            }],
            context: format!("{} h={h}", p.describe()),
        })
    }

    /// Property 6b: `|Δf(i)| = |Δf(h)|` when `h` was `j`'s only predecessor.
    pub fn check_power_neutrality_2(&self, p: &PairedSystems, h: ActorId) -> Result<AxiomReport> {
        let (i, j) = p.added;
        let hh = p.base.check(h)?;
        if h == i || h == j {
            return Err(unmet("h must differ from i and j"));
        }
        if p.base.pred_mask(j.index()) != 1 << hh {
            return Err(unmet(format!(
                "actor {h} is not the only predecessor of {j} in the base"
            )));
        }
        let (lh, li, lj) = (p.extended.layer(h)?, p.extended.layer(i)?, p.extended.layer(j)?);
        if lh != li || li + 1 != lj {
            return Err(unmet("h and i must share the layer right above j"));
        }
        let d = self.deltas(p)?;
        let (di, dh) = (d[i.index()], d[hh]);
        let branch = disjunction(di, -dh, dh);
        Ok(AxiomReport {
            axiom: Axiom::PowerNeut2,
            holds: branch.is_some(),
            branch,
            witnesses: vec![Witness {
                actor: i,
                lhs: di,
                rhs: -dh,
            }],
            context: format!("{} h={h}", p.describe()),
        })
    }

    /// Property 7: total score equals the number of (vector, agreeing actor)
    /// pairs.
    pub fn check_normalization(&self, s: &Society) -> Result<AxiomReport> {
        let lhs: i64 = self.eval(s)?.iter().sum();
        let rhs = normalization_total(s, &self.cfg)? as i64;
        Ok(AxiomReport {
            axiom: Axiom::Norm,
            holds: lhs == rhs,
            branch: None,
            witnesses: vec![Witness {
                actor: ActorId::new(0),
                lhs,
                rhs,
            }],
            context: format!("n={}", s.n()),
        })
    }
}
