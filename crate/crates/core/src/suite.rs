//! Randomized axiom suites and the perturbed-score negative control.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::axioms::{Axiom, AxiomReport, PairedSystems, Perturbed, Satisfaction, ScoreFn, Verifier};
use crate::error::{Error, Result};
use crate::generate::{random_layer_sizes, random_society_with};
use crate::rule::DecisionRule;
use crate::scores::ScoreConfig;
use crate::society::{ActorClass, ActorId, Society};

/// The numbered satisfaction properties, including the layered variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Property {
    Symmetry,
    Dictator,
    DictatedIndependence,
    EqualGain,
    EqualAbsChange,
    OppositeGain,
    OppositeGainLayered,
    HorizontalNeutrality,
    PowerNeutrality,
    Normalization,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::Symmetry,
        Property::Dictator,
        Property::DictatedIndependence,
        Property::EqualGain,
        Property::EqualAbsChange,
        Property::OppositeGain,
        Property::OppositeGainLayered,
        Property::HorizontalNeutrality,
        Property::PowerNeutrality,
        Property::Normalization,
    ];

    /// The axiom set that pins the satisfaction score down on layered societies.
    pub const CHARACTERIZING: [Property; 7] = [
        Property::Symmetry,
        Property::Dictator,
        Property::DictatedIndependence,
        Property::EqualAbsChange,
        Property::OppositeGainLayered,
        Property::HorizontalNeutrality,
        Property::Normalization,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Property::Symmetry => "1",
            Property::Dictator => "2",
            Property::DictatedIndependence => "3",
            Property::EqualGain => "4",
            Property::EqualAbsChange => "4b",
            Property::OppositeGain => "5",
            Property::OppositeGainLayered => "5b",
            Property::HorizontalNeutrality => "6",
            Property::PowerNeutrality => "6b",
            Property::Normalization => "7",
        }
    }

    pub fn axiom(self) -> Axiom {
        match self {
            Property::Symmetry => Axiom::Sym,
            Property::Dictator => Axiom::Dict,
            Property::DictatedIndependence => Axiom::DictInd,
            Property::EqualGain => Axiom::EqGain,
            Property::EqualAbsChange => Axiom::EqAbsChange,
            Property::OppositeGain | Property::OppositeGainLayered => Axiom::OppGain,
            Property::HorizontalNeutrality => Axiom::HorizNeut,
            Property::PowerNeutrality => Axiom::PowerNeut2,
            Property::Normalization => Axiom::Norm,
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.label() == text)
            .ok_or_else(|| Error::InvalidParams(format!("unknown property {text:?}")))
    }
}

/// Which actor classes may supply the new influencer `i` in pair properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum InfluencerDomain {
    /// Every actor the property's precondition admits.
    #[default]
    Any,
    /// Only opinion leaders and independent actors.
    Sources,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub min_n: usize,
    pub max_n: usize,
    pub max_layers: usize,
    pub scores: ScoreConfig,
    pub properties: Vec<Property>,
    pub influencers: InfluencerDomain,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            trials: 100,
            min_n: 3,
            max_n: 11,
            max_layers: 4,
            scores: ScoreConfig::default(),
            properties: Property::ALL.to_vec(),
            influencers: InfluencerDomain::Any,
        }
    }
}

/// Attempts per trial before giving up on finding a qualifying instance.
const MAX_ATTEMPTS: usize = 5_000;
/// Failing reports kept per property.
const KEEP_FAILURES: usize = 3;

#[derive(Debug, Clone, Serialize)]
pub struct PropertyTally {
    pub property: Property,
    pub trials: usize,
    pub held: usize,
    pub failures: Vec<AxiomReport>,
}

impl PropertyTally {
    pub fn all_hold(&self) -> bool {
        self.held == self.trials
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub tallies: Vec<PropertyTally>,
}

impl SuiteSummary {
    pub fn all_hold(&self) -> bool {
        self.tallies.iter().all(PropertyTally::all_hold)
    }

    pub fn tally(&self, p: Property) -> Option<&PropertyTally> {
        self.tallies.iter().find(|t| t.property == p)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for t in &self.tallies {
            let status = if t.all_hold() { "ok" } else { "FAIL" };
            out.push_str(&format!(
                "property {:<2} {:<11} {}/{} hold {status}\n",
                t.property.label(),
                t.property.axiom().to_string(),
                t.held,
                t.trials
            ));
            for f in &t.failures {
                out.push_str(&format!("  counterexample: {}\n", f.to_json()));
            }
        }
        if self.all_hold() {
            let trials = self.tallies.first().map_or(0, |t| t.trials);
            out.push_str(&format!("all axioms hold: {trials}/{trials} per axiom\n"));
        }
        out
    }
}

struct Sampler<'a> {
    cfg: &'a SuiteConfig,
    odd_sizes: Vec<usize>,
}

fn sample_fraction<R: Rng>(rng: &mut R) -> DecisionRule {
    let (num, den) = [(1, 2), (3, 5), (2, 3), (3, 4)][rng.gen_range(0..4)];
    DecisionRule::fraction(num, den).expect("valid fraction")
}

impl<'a> Sampler<'a> {
    fn new(cfg: &'a SuiteConfig) -> Result<Self> {
        let odd_sizes: Vec<usize> = (cfg.min_n.max(1)..=cfg.max_n).filter(|n| n % 2 == 1).collect();
        if odd_sizes.is_empty() {
            return Err(Error::InvalidParams(format!(
                "no odd actor count in {}..={}",
                cfg.min_n, cfg.max_n
            )));
        }
        if cfg.max_n > cfg.scores.cap {
            return Err(Error::TooLarge {
                n: cfg.max_n,
                cap: cfg.scores.cap,
            });
        }
        Ok(Sampler { cfg, odd_sizes })
    }

    fn society<R: Rng>(&self, rng: &mut R, rule: DecisionRule) -> Result<Society> {
        let n = *self.odd_sizes.choose(rng).expect("non-empty");
        let sizes = random_layer_sizes(rng, n, self.cfg.max_layers);
        let density = rng.gen_range(0.2..0.8);
        random_society_with(rng, &sizes, density, rule)
    }

    fn star<R: Rng>(&self, rng: &mut R) -> Result<(Society, ActorId)> {
        let n = *self.odd_sizes.choose(rng).expect("non-empty");
        let center = rng.gen_range(1..=n);
        let s = Society::new(
            n,
            (1..=n).filter(|&j| j != center).map(|j| (center, j)),
            DecisionRule::Unanimity,
        )?;
        Ok((s, ActorId::new(center)))
    }

    /// Every valid single-edge extension of `s`, shuffled.
    fn extensions<R: Rng>(&self, rng: &mut R, s: &Society) -> Vec<PairedSystems> {
        let mut out = Vec::new();
        for i in s.actors() {
            for j in s.actors() {
                if i != j && !s.has_edge(i, j) {
                    if let Ok(p) = PairedSystems::new(s.clone(), i, j) {
                        out.push(p);
                    }
                }
            }
        }
        out.shuffle(rng);
        out
    }

    fn admits_influencer(&self, p: &PairedSystems) -> bool {
        match self.cfg.influencers {
            InfluencerDomain::Any => true,
            InfluencerDomain::Sources => p
                .base()
                .classify(p.added_edge().0)
                .map(ActorClass::is_source)
                .unwrap_or(false),
        }
    }
}

/// `Ok(None)` when the instance fails the checker's precondition.
fn filter_precondition(r: Result<AxiomReport>) -> Result<Option<AxiomReport>> {
    match r {
        Ok(report) => Ok(Some(report)),
        Err(Error::PreconditionUnmet(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn check_once<F: ScoreFn, R: Rng>(
    property: Property,
    trial: usize,
    sampler: &Sampler<'_>,
    verifier: &Verifier<F>,
    rng: &mut R,
) -> Result<AxiomReport> {
    let unanimity = DecisionRule::Unanimity;
    for _ in 0..MAX_ATTEMPTS {
        let found = match property {
            Property::Symmetry => {
                let s = sampler.society(rng, unanimity)?;
                let mut twins: Vec<(ActorId, ActorId)> = Vec::new();
                for i in s.actors() {
                    for j in s.actors().filter(|&j| j > i) {
                        let (a, b) = (s.neighbors(i)?, s.neighbors(j)?);
                        if a.predecessors == b.predecessors && a.successors == b.successors {
                            twins.push((i, j));
                        }
                    }
                }
                match twins.choose(rng) {
                    Some(&(i, j)) => filter_precondition(verifier.check_symmetry(&s, i, j))?,
                    None => None,
                }
            }
            Property::Dictator => {
                let (s, center) = sampler.star(rng)?;
                filter_precondition(verifier.check_dictator(&s, center))?
            }
            Property::DictatedIndependence => {
                let s1 = sampler.society(rng, unanimity)?;
                let mut s2 = sampler.society(rng, unanimity)?;
                while s2.n() != s1.n() {
                    s2 = sampler.society(rng, unanimity)?;
                }
                let shared: Vec<ActorId> = s1
                    .actors()
                    .filter(|&a| s1.degree(a).map(|d| d.indegree) == Ok(1) && s2.degree(a).map(|d| d.indegree) == Ok(1))
                    .collect();
                match shared.choose(rng) {
                    Some(&i) => filter_precondition(verifier.check_dictated_independence(&s1, &s2, i))?,
                    None => None,
                }
            }
            Property::Normalization => {
                // alternate the influence rule between trials
                let rule = if trial.is_multiple_of(2) {
                    unanimity
                } else {
                    sample_fraction(rng)
                };
                let s = sampler.society(rng, rule)?;
                Some(verifier.check_normalization(&s)?)
            }
            pair_property => {
                let s = sampler.society(rng, unanimity)?;
                let mut hit = None;
                for p in sampler.extensions(rng, &s) {
                    if !sampler.admits_influencer(&p) {
                        continue;
                    }
                    let (i, j) = p.added_edge();
                    let is_source = p.base().classify(i)?.is_source();
                    let report = match pair_property {
                        Property::EqualGain => filter_precondition(verifier.check_equal_gain(&p))?,
                        Property::EqualAbsChange => filter_precondition(verifier.check_equal_abs_change(&p))?,
                        Property::OppositeGain if is_source => filter_precondition(verifier.check_opposite_gain(&p))?,
                        Property::OppositeGain => None,
                        Property::OppositeGainLayered => filter_precondition(verifier.check_opposite_gain(&p))?,
                        Property::HorizontalNeutrality => {
                            let mut out = None;
                            for h in p.base().neighbors(j)?.predecessors {
                                out = filter_precondition(verifier.check_horizontal_neutrality(&p, h))?;
                                if out.is_some() {
                                    break;
                                }
                            }
                            out
                        }
                        Property::PowerNeutrality => match p.base().neighbors(j)?.predecessors.as_slice() {
                            [h] => filter_precondition(verifier.check_power_neutrality_2(&p, *h))?,
                            _ => None,
                        },
                        _ => unreachable!("single-society properties handled above"),
                    };
                    if report.is_some() {
                        hit = report;
                        break;
                    }
                }
                hit
            }
        };
        if let Some(report) = found {
            return Ok(report);
        }
    }
    Err(Error::InvalidParams(format!(
        "no instance for property {property} found in {MAX_ATTEMPTS} attempts"
    )))
}

fn property_rng(seed: u64, property: Property) -> ChaCha8Rng {
    let index = Property::ALL.iter().position(|&p| p == property).expect("listed") as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index + 1);
    rng
}

/// Runs `cfg.trials` randomized instances of each configured property
/// against `score`.
pub fn run_axiom_suite_with<F: ScoreFn>(cfg: &SuiteConfig, score: F) -> Result<SuiteSummary> {
    let sampler = Sampler::new(cfg)?;
    let verifier = Verifier::new(score, cfg.scores);
    let mut tallies = Vec::new();
    for &property in &cfg.properties {
        let mut rng = property_rng(cfg.seed, property);
        let mut tally = PropertyTally {
            property,
            trials: cfg.trials,
            held: 0,
            failures: Vec::new(),
        };
        for trial in 0..cfg.trials {
            let report = check_once(property, trial, &sampler, &verifier, &mut rng)?;
            if report.holds {
                tally.held += 1;
            } else if tally.failures.len() < KEEP_FAILURES {
                tally.failures.push(report);
            }
        }
        tallies.push(tally);
    }
    Ok(SuiteSummary { tallies })
}

pub fn run_axiom_suite(cfg: &SuiteConfig) -> Result<SuiteSummary> {
    run_axiom_suite_with(cfg, Satisfaction(cfg.scores))
}

/// One negative-control trial: which axioms caught the perturbed score.
#[derive(Debug, Clone, Serialize)]
pub struct ControlTrial {
    pub society: String,
    pub perturbed_actor: ActorId,
    pub violated: Vec<Property>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ControlSummary {
    pub trials: Vec<ControlTrial>,
}

impl ControlSummary {
    pub fn every_trial_violates(&self) -> bool {
        self.trials.iter().all(|t| !t.violated.is_empty())
    }

    pub fn render(&self) -> String {
        let caught = self.trials.iter().filter(|t| !t.violated.is_empty()).count();
        let mut out = format!(
            "negative control: {caught}/{} perturbed scores violate at least one axiom\n",
            self.trials.len()
        );
        for p in Property::CHARACTERIZING {
            let hits = self.trials.iter().filter(|t| t.violated.contains(&p)).count();
            out.push_str(&format!("  property {:<2} caught {hits}\n", p.label()));
        }
        out
    }
}

/// Applies every characterizing axiom that has a qualifying instance around
/// `s` and returns the ones the score violates.
fn violated_axioms<F: ScoreFn>(s: &Society, verifier: &Verifier<F>) -> Result<Vec<Property>> {
    let mut violated = Vec::new();
    let mut note = |p: Property, r: Result<AxiomReport>| -> Result<()> {
        if let Some(report) = filter_precondition(r)? {
            if !report.holds && !violated.contains(&p) {
                violated.push(p);
            }
        }
        Ok(())
    };
    for i in s.actors() {
        for j in s.actors().filter(|&j| j != i) {
            note(Property::Symmetry, verifier.check_symmetry(s, i, j))?;
        }
        note(Property::Dictator, verifier.check_dictator(s, i))?;
        note(
            Property::DictatedIndependence,
            verifier.check_dictated_independence(s, s, i),
        )?;
    }
    note(Property::Normalization, verifier.check_normalization(s))?;
    for i in s.actors() {
        for j in s.actors() {
            if i == j || s.has_edge(i, j) {
                continue;
            }
            let Ok(p) = PairedSystems::new(s.clone(), i, j) else {
                continue;
            };
            note(Property::EqualAbsChange, verifier.check_equal_abs_change(&p))?;
            note(Property::OppositeGainLayered, verifier.check_opposite_gain(&p))?;
            for h in s.neighbors(j)?.predecessors {
                note(
                    Property::HorizontalNeutrality,
                    verifier.check_horizontal_neutrality(&p, h),
                )?;
            }
        }
    }
    Ok(violated)
}

/// Perturbs the satisfaction score by `+1` on one actor without a symmetric
/// twin and records which characterizing axioms notice.
pub fn run_negative_control(cfg: &SuiteConfig) -> Result<ControlSummary> {
    let sampler = Sampler::new(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(1000);
    let mut trials = Vec::with_capacity(cfg.trials);
    for _ in 0..cfg.trials {
        let mut attempt = 0;
        let (s, actor) = loop {
            attempt += 1;
            if attempt > MAX_ATTEMPTS {
                return Err(Error::InvalidParams("no society with an asymmetric actor found".into()));
            }
            let s = sampler.society(&mut rng, DecisionRule::Unanimity)?;
            let lonely: Vec<ActorId> = s
                .actors()
                .filter(|&i| {
                    let a = s.neighbors(i).expect("in range");
                    s.actors().filter(|&j| j != i).all(|j| {
                        let b = s.neighbors(j).expect("in range");
                        a.predecessors != b.predecessors || a.successors != b.successors
                    })
                })
                .collect();
            if let Some(&actor) = lonely.choose(&mut rng) {
                break (s, actor);
            }
        };
        let score = Perturbed {
            inner: Satisfaction(cfg.scores),
            actor,
            delta: 1,
        };
        let verifier = Verifier::new(score, cfg.scores);
        let violated = violated_axioms(&s, &verifier)?;
        trials.push(ControlTrial {
            society: s.to_json(),
            perturbed_actor: actor,
            violated,
        });
    }
    Ok(ControlSummary { trials })
}
