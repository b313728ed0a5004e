//! Exact satisfaction, Rae and Banzhaf scores by enumerating `{0,1}^n`.
//!
//! Every score here is a raw count. The enumeration space is split into
//! contiguous index ranges, one per worker, and partial counts are summed,
//! so results do not depend on the worker count.

use std::ops::Range;

use serde::Serialize;

use crate::decision::{low_mask, DecisionVector, TieRule};
use crate::error::{Error, Result};
use crate::society::{ActorClass, ActorId, Society};

pub const DEFAULT_CAP: usize = 24;
/// Above this size the induced game is evaluated lazily instead of tabulated.
const TABLE_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScoreConfig {
    /// Largest `n` accepted for `2^n` enumeration.
    pub cap: usize,
    pub workers: usize,
    pub ties: TieRule,
}

impl Default for ScoreConfig {
    fn default() -> Self {
        ScoreConfig {
            cap: DEFAULT_CAP,
            workers: 1,
            ties: TieRule::Reject,
        }
    }
}

impl ScoreConfig {
    pub fn with_workers(self, workers: usize) -> Self {
        ScoreConfig { workers, ..self }
    }

    pub fn with_ties(self, ties: TieRule) -> Self {
        ScoreConfig { ties, ..self }
    }

    pub fn with_cap(self, cap: usize) -> Self {
        ScoreConfig { cap, ..self }
    }

    fn admit(&self, s: &Society) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::InvalidParams("worker count must be at least 1".into()));
        }
        // masks are u64 and the space size 2^n must fit as well
        if s.n() > self.cap || s.n() > 62 {
            return Err(Error::TooLarge {
                n: s.n(),
                cap: self.cap.min(62),
            });
        }
        Ok(())
    }
}

/// Runs `job` over `workers` disjoint contiguous ranges covering `0..total`.
pub(crate) fn partitioned<T, F>(total: u64, workers: usize, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(Range<u64>) -> Result<T> + Sync,
{
    let workers = (workers.max(1) as u64).min(total.max(1));
    let chunk = total.div_ceil(workers);
    let ranges: Vec<Range<u64>> = (0..workers)
        .map(|w| (w * chunk).min(total)..((w + 1) * chunk).min(total))
        .collect();
    if ranges.len() == 1 {
        return Ok(vec![job(ranges[0].clone())?]);
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|range| {
                let job = &job;
                scope.spawn(move || job(range))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .collect()
    })
}

fn tie_error(s: &Society, mask: u64) -> Error {
    Error::TieEncountered(DecisionVector::from_mask(s.n(), mask).to_string())
}

impl Society {
    /// Resolved collective decision for mask `x`.
    #[inline]
    pub(crate) fn collective(&self, x: u64, ties: TieRule) -> Result<bool> {
        self.outcome_mask(x).resolve(ties).ok_or_else(|| tie_error(self, x))
    }
}

/// `1` when the collective decision on `x` matches actor `i`'s initial bit.
pub fn satbar(s: &Society, i: ActorId, x: DecisionVector, ties: TieRule) -> Result<bool> {
    let idx = s.check(i)?;
    if x.len() != s.n() {
        return Err(Error::LengthMismatch {
            expected: s.n(),
            got: x.len(),
        });
    }
    let c = s.collective(x.mask(), ties)?;
    Ok(c == (x.mask() >> idx & 1 == 1))
}

pub fn sat(s: &Society, i: ActorId, cfg: &ScoreConfig) -> Result<u64> {
    let idx = s.check(i)?;
    cfg.admit(s)?;
    let parts = partitioned(1u64 << s.n(), cfg.workers, |range| {
        let mut count = 0u64;
        for x in range {
            if s.collective(x, cfg.ties)? == (x >> idx & 1 == 1) {
                count += 1;
            }
        }
        Ok(count)
    })?;
    Ok(parts.into_iter().sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActorScore {
    pub actor: ActorId,
    pub class: ActorClass,
    pub layer: u32,
    pub sat: u64,
    pub banzhaf: u64,
}

/// Per-actor exact scores for one society.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScoreTable {
    pub n: usize,
    pub actors: Vec<ActorScore>,
    /// `sum_x |{i : C(x) = x_i}|`, counted per vector rather than per actor.
    pub total_sat: u64,
}

impl ScoreTable {
    pub fn sat(&self, i: ActorId) -> Option<u64> {
        self.actors.get(i.get().checked_sub(1)?).map(|a| a.sat)
    }

    pub fn banzhaf(&self, i: ActorId) -> Option<u64> {
        self.actors.get(i.get().checked_sub(1)?).map(|a| a.banzhaf)
    }

    pub fn sat_vector(&self) -> Vec<u64> {
        self.actors.iter().map(|a| a.sat).collect()
    }

    pub fn sat_sum(&self) -> u64 {
        self.actors.iter().map(|a| a.sat).sum()
    }

    /// Tab-separated rows with a header.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("actor\tclass\tlayer\tsat\tbanzhaf\n");
        for a in &self.actors {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                a.actor,
                a.class.letter(),
                a.layer,
                a.sat,
                a.banzhaf
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("score table serializes")
    }
}

#[derive(Default)]
struct SatTally {
    per_actor: Vec<u64>,
    total: u64,
}

/// All actors' satisfaction and Banzhaf scores plus the normalization total.
pub fn sat_all(s: &Society, cfg: &ScoreConfig) -> Result<ScoreTable> {
    cfg.admit(s)?;
    let n = s.n();
    let full = low_mask(n);
    let parts = partitioned(1u64 << n, cfg.workers, |range| {
        let mut tally = SatTally {
            per_actor: vec![0; n],
            total: 0,
        };
        for x in range {
            let agree = if s.collective(x, cfg.ties)? { x } else { !x & full };
            // per-vector count, independent of the per-actor counters
            tally.total += agree.count_ones() as u64;
            for (k, slot) in tally.per_actor.iter_mut().enumerate() {
                *slot += agree >> k & 1;
            }
        }
        Ok(tally)
    })?;
    let mut sat = vec![0u64; n];
    let mut total_sat = 0;
    for part in parts {
        total_sat += part.total;
        for (acc, v) in sat.iter_mut().zip(part.per_actor) {
            *acc += v;
        }
    }
    let game = InducedGame::new(s, cfg);
    let banzhaf = game.banzhaf_all()?;
    let actors = s
        .actors()
        .map(|a| ActorScore {
            actor: a,
            class: s.classify(a).expect("actor in range"),
            layer: s.layer(a).expect("actor in range"),
            sat: sat[a.index()],
            banzhaf: banzhaf[a.index()],
        })
        .collect();
    Ok(ScoreTable { n, actors, total_sat })
}

/// Right-hand side of the normalization axiom, by a plain double loop over
/// vectors and actors.
pub fn normalization_total(s: &Society, cfg: &ScoreConfig) -> Result<u64> {
    cfg.admit(s)?;
    let parts = partitioned(1u64 << s.n(), cfg.workers, |range| {
        let mut total = 0u64;
        for x in range {
            let c = s.collective(x, cfg.ties)?;
            total += (0..s.n()).filter(|&k| (x >> k & 1 == 1) == c).count() as u64;
        }
        Ok(total)
    })?;
    Ok(parts.into_iter().sum())
}

/// The simple game whose coalition `X` wins iff the society decides `1` on
/// the characteristic vector of `X`.
pub struct InducedGame<'a> {
    society: &'a Society,
    cfg: ScoreConfig,
}

impl<'a> InducedGame<'a> {
    pub fn new(society: &'a Society, cfg: &ScoreConfig) -> Self {
        InducedGame { society, cfg: *cfg }
    }

    pub fn players(&self) -> usize {
        self.society.n()
    }

    pub fn wins(&self, coalition: &[ActorId]) -> Result<bool> {
        let mut mask = 0u64;
        for &a in coalition {
            mask |= 1 << self.society.check(a)?;
        }
        self.wins_mask(mask)
    }

    #[inline]
    fn wins_mask(&self, coalition: u64) -> Result<bool> {
        self.society.collective(coalition, self.cfg.ties)
    }

    fn space(&self) -> u64 {
        1u64 << self.society.n()
    }

    /// Packed win table, only for `n <= TABLE_LIMIT`.
    fn table(&self) -> Result<Option<Vec<u64>>> {
        let n = self.society.n();
        if n > TABLE_LIMIT {
            return Ok(None);
        }
        let words = partitioned(self.space().div_ceil(64), self.cfg.workers, |range| {
            let mut words = Vec::with_capacity((range.end - range.start) as usize);
            for w in range {
                let mut word = 0u64;
                for b in 0..64 {
                    let x = w * 64 + b;
                    if x < self.space() && self.wins_mask(x)? {
                        word |= 1 << b;
                    }
                }
                words.push(word);
            }
            Ok(words)
        })?;
        Ok(Some(words.concat()))
    }

    /// Critical-coalition counts for every player, by direct enumeration.
    pub fn banzhaf_all(&self) -> Result<Vec<u64>> {
        self.cfg.admit(self.society)?;
        let n = self.society.n();
        let table = self.table()?;
        let wins = |x: u64| -> Result<bool> {
            match &table {
                Some(t) => Ok(t[(x / 64) as usize] >> (x % 64) & 1 == 1),
                None => self.wins_mask(x),
            }
        };
        let parts = partitioned(self.space(), self.cfg.workers, |range| {
            let mut counts = vec![0u64; n];
            for x in range {
                if !wins(x)? {
                    continue;
                }
                let mut members = x;
                while members != 0 {
                    let k = members.trailing_zeros() as usize;
                    members &= members - 1;
                    if !wins(x & !(1 << k))? {
                        counts[k] += 1;
                    }
                }
            }
            Ok(counts)
        })?;
        let mut total = vec![0u64; n];
        for part in parts {
            for (acc, v) in total.iter_mut().zip(part) {
                *acc += v;
            }
        }
        Ok(total)
    }

    fn count<F>(&self, pred: F) -> Result<u64>
    where
        F: Fn(u64, bool) -> bool + Sync,
    {
        self.cfg.admit(self.society)?;
        let parts = partitioned(self.space(), self.cfg.workers, |range| {
            let mut count = 0u64;
            for x in range {
                if pred(x, self.wins_mask(x)?) {
                    count += 1;
                }
            }
            Ok(count)
        })?;
        Ok(parts.into_iter().sum())
    }

    /// `|{X : X wins and X \ {i} loses}|`.
    pub fn banzhaf(&self, i: ActorId) -> Result<u64> {
        let bit = 1u64 << self.society.check(i)?;
        self.cfg.admit(self.society)?;
        let parts = partitioned(self.space(), self.cfg.workers, |range| {
            let mut count = 0u64;
            for x in range.filter(|x| x & bit != 0) {
                if self.wins_mask(x)? && !self.wins_mask(x & !bit)? {
                    count += 1;
                }
            }
            Ok(count)
        })?;
        Ok(parts.into_iter().sum())
    }

    /// `|{X : i in X and X wins, or i not in X and X loses}|`.
    pub fn rae(&self, i: ActorId) -> Result<u64> {
        let bit = 1u64 << self.society.check(i)?;
        self.count(|x, wins| (x & bit != 0) == wins)
    }

    pub fn is_dummy(&self, i: ActorId) -> Result<bool> {
        let bit = 1u64 << self.society.check(i)?;
        self.cfg.admit(self.society)?;
        let parts = partitioned(self.space(), self.cfg.workers, |range| {
            for x in range.filter(|x| x & bit != 0) {
                if self.wins_mask(x)? && !self.wins_mask(x & !bit)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })?;
        Ok(parts.into_iter().all(|ok| ok))
    }

    pub fn is_dictator(&self, i: ActorId) -> Result<bool> {
        let bit = 1u64 << self.society.check(i)?;
        let mismatches = self.count(|x, wins| (x & bit != 0) != wins)?;
        Ok(mismatches == 0)
    }

    /// Whether `X` winning and `X ⊆ Z` always imply `Z` winning.
    pub fn is_monotone(&self) -> Result<bool> {
        let n = self.society.n();
        let violations = self
            .count(|x, wins| wins && (0..n).any(|k| x >> k & 1 == 0 && !self.wins_mask(x | 1 << k).unwrap_or(true)))?;
        Ok(violations == 0)
    }
}

pub fn banzhaf(s: &Society, i: ActorId, cfg: &ScoreConfig) -> Result<u64> {
    InducedGame::new(s, cfg).banzhaf(i)
}

pub fn rae(s: &Society, i: ActorId, cfg: &ScoreConfig) -> Result<u64> {
    InducedGame::new(s, cfg).rae(i)
}

pub fn is_dummy(s: &Society, i: ActorId, cfg: &ScoreConfig) -> Result<bool> {
    InducedGame::new(s, cfg).is_dummy(i)
}

pub fn is_dictator(s: &Society, i: ActorId, cfg: &ScoreConfig) -> Result<bool> {
    InducedGame::new(s, cfg).is_dictator(i)
}
