//! Conformance registry: every structural claim about linear morphisms,
//! Rickart and Baer conditions is a named check, evaluated exhaustively on
//! a corpus of finite modular lattices.
//!
//! A check either passes, is skipped because a standing hypothesis is unmet
//! (non-modular input, missing projections, size caps), or fails with a
//! replayable counterexample. Failures are data, never panics.

mod checks;
mod random;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::HarnessError;
use crate::lattice::{ElementId, Lattice, LatticeSpec};
use crate::limits::Limits;
use crate::monoid::EndoMonoid;
use crate::properties::{self, Property};

pub use random::{random_corpus, random_modular_lattice, MAX_ATTEMPTS, MAX_RANDOM_SIZE};

/// Version of the [`CorpusReport`] JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Skip(String),
    Fail(String),
}

/// What a check is evaluated on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// Once per lattice.
    Lattice,
    /// Once per lattice and monoid.
    Monoid,
    /// Once per ordered pair of lattices.
    Pair,
}

/// The monoids every lattice is examined under. Both contain all
/// projections, so projection hypotheses hold by construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonoidChoice {
    /// `End_lin(L)`.
    Full,
    /// The closure of the identity, zero and all projections.
    Projections,
}

impl MonoidChoice {
    pub const ALL: [MonoidChoice; 2] = [MonoidChoice::Full, MonoidChoice::Projections];

    pub fn id(self) -> &'static str {
        match self {
            MonoidChoice::Full => "full",
            MonoidChoice::Projections => "projections",
        }
    }

    pub fn build(self, l: &Arc<Lattice>, limits: &Limits) -> Result<EndoMonoid, String> {
        match self {
            MonoidChoice::Full => EndoMonoid::full(l, limits),
            MonoidChoice::Projections => EndoMonoid::generated(l, &[], true, limits),
        }
        .map_err(|e| e.to_string())
    }
}

type LatticeFn = fn(&Subject) -> Outcome;
type MonoidFn = fn(&Subject, &MonoidCtx) -> Outcome;
type PairFn = fn(&Subject, &Subject, &Limits) -> Outcome;

#[derive(Clone, Copy)]
enum Runner {
    Lattice(LatticeFn),
    Monoid(MonoidFn),
    Pair(PairFn),
}

/// A registered check: identifier, scope, and the claim in formula form.
#[derive(Clone, Copy)]
pub struct Check {
    pub id: &'static str,
    pub claim: &'static str,
    runner: Runner,
}

impl Check {
    pub fn scope(&self) -> Scope {
        match self.runner {
            Runner::Lattice(_) => Scope::Lattice,
            Runner::Monoid(_) => Scope::Monoid,
            Runner::Pair(_) => Scope::Pair,
        }
    }
}

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Check")
            .field("id", &self.id)
            .field("scope", &self.scope())
            .finish()
    }
}

/// Identifiers that must be present in [`registry`].
pub const REQUIRED_CHECKS: [&str; 31] = [
    "riccipssp",
    "baerricscip",
    "ricendoric",
    "dricendodric",
    "baercar",
    "dbaercar",
    "ricd2",
    "dricc2",
    "kercompkergenann",
    "imcompintkercogen",
    "baercarK",
    "dbaercarT",
    "acc_rickart_eq_baer",
    "kerpi",
    "idemcomp",
    "fipi1",
    "fidis",
    "lemmaret",
    "splits",
    "isolin",
    "boolean_meetmaps",
    "compintric",
    "complbaer",
    "compldbaer",
    "ricind2",
    "if2",
    "sumric",
    "decomp_fi",
    "prod_projections_linear",
    "prod_rickart_pairs",
    "ricdirsumsub",
];

/// Every check, in report order.
pub fn registry() -> &'static [Check] {
    static REGISTRY: OnceLock<Vec<Check>> = OnceLock::new();
    REGISTRY.get_or_init(checks::all)
}

pub fn find_check(id: &str) -> Option<&'static Check> {
    registry().iter().find(|c| c.id == id)
}

/// One lattice with lazily computed data shared by its checks.
type LazyMonoid = OnceLock<Result<Arc<MonoidCtx>, String>>;

pub struct Subject {
    pub lattice: Arc<Lattice>,
    limits: Limits,
    monoids: Vec<(MonoidChoice, LazyMonoid)>,
    families: OnceLock<Vec<Vec<ElementId>>>,
    fully_invariant: OnceLock<Vec<ElementId>>,
    down_rickart: Vec<OnceLock<Option<bool>>>,
}

impl Subject {
    pub fn new(lattice: Arc<Lattice>, limits: &Limits) -> Subject {
        let n = lattice.len();
        Subject {
            lattice,
            limits: limits.clone(),
            monoids: MonoidChoice::ALL
                .iter()
                .map(|&c| (c, OnceLock::new()))
                .collect(),
            families: OnceLock::new(),
            fully_invariant: OnceLock::new(),
            down_rickart: (0..n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn is_modular(&self) -> bool {
        self.lattice.modularity_witness().is_none()
    }

    pub fn monoid(&self, choice: MonoidChoice) -> Result<Arc<MonoidCtx>, String> {
        let slot = &self
            .monoids
            .iter()
            .find(|(c, _)| *c == choice)
            .expect("every choice has a slot")
            .1;
        slot.get_or_init(|| {
            choice
                .build(&self.lattice, &self.limits)
                .map(|m| Arc::new(MonoidCtx::new(choice, Arc::new(m))))
        })
        .clone()
    }

    pub fn full(&self) -> Result<Arc<MonoidCtx>, String> {
        self.monoid(MonoidChoice::Full)
    }

    /// Every independent family with join `1`, as subsets of the nonzero
    /// elements in bitmask order. Falls back to the decomposition blocks
    /// and complementary pairs on larger lattices.
    pub fn families(&self) -> &[Vec<ElementId>] {
        self.families
            .get_or_init(|| checks::independent_families(&self.lattice))
    }

    /// Elements fixed below themselves by all of `End_lin(L)`.
    pub fn fully_invariant(&self) -> Result<&[ElementId], String> {
        if let Some(v) = self.fully_invariant.get() {
            return Ok(v);
        }
        let full = self.full()?;
        Ok(self
            .fully_invariant
            .get_or_init(|| full.m.fully_invariant_elements()))
    }

    /// Whether `[0, x]` is Rickart for its own `End_lin`; `None` past the
    /// enumeration cap.
    pub fn down_rickart(&self, x: ElementId) -> Option<bool> {
        *self.down_rickart[x.index()].get_or_init(|| {
            let iv = self.lattice.down_interval(x);
            properties::check_cross_rickart(iv.lattice(), iv.lattice(), &self.limits)
                .ok()
                .map(|v| v.holds)
        })
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }
}

/// A monoid over a subject's lattice with memoized property verdicts.
pub struct MonoidCtx {
    pub choice: MonoidChoice,
    pub m: Arc<EndoMonoid>,
    verdicts: Vec<OnceLock<bool>>,
    restricted: OnceLock<Vec<checks::Restriction>>,
}

impl MonoidCtx {
    fn new(choice: MonoidChoice, m: Arc<EndoMonoid>) -> MonoidCtx {
        MonoidCtx {
            choice,
            m,
            verdicts: (0..Property::ALL.len()).map(|_| OnceLock::new()).collect(),
            restricted: OnceLock::new(),
        }
    }

    /// Memoized [`properties::evaluate`]. Rickpix is the only fallible
    /// property and its precondition holds for every [`MonoidChoice`].
    pub fn holds(&self, p: Property) -> bool {
        let i = Property::ALL.iter().position(|&q| q == p).expect("listed");
        *self.verdicts[i].get_or_init(|| {
            properties::evaluate(&self.m, p)
                .map(|v| v.holds)
                .unwrap_or(false)
        })
    }

    fn restricted(&self, limits: &Limits) -> &[checks::Restriction] {
        self.restricted
            .get_or_init(|| checks::restrictions(&self.m, limits))
    }
}

/// Options for [`run_conformance`].
#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub limits: Limits,
    pub monoids: Vec<MonoidChoice>,
    /// Pairs are evaluated only when `|L| · |M|` is at most this.
    pub max_pair_product: usize,
    /// Recorded in the report; the corpus itself is supplied by the caller.
    pub seed: Option<u64>,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            limits: Limits::default(),
            monoids: MonoidChoice::ALL.to_vec(),
            max_pair_product: 20,
            seed: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub id: String,
    pub scope: Scope,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Skip reasons with their counts, sorted by reason.
    pub skip_reasons: BTreeMap<String, usize>,
}

/// A counterexample with everything needed to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub check: String,
    pub lattice: LatticeSpec,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub partner: Option<LatticeSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub monoid: Option<MonoidChoice>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub schema_version: u32,
    pub seed: Option<u64>,
    pub lattice_count: usize,
    pub pair_count: usize,
    pub monoids: Vec<MonoidChoice>,
    pub checks: Vec<CheckTally>,
    pub failures: Vec<FailureRecord>,
}

impl CorpusReport {
    pub fn failed(&self) -> usize {
        self.checks.iter().map(|c| c.failed).sum()
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().map(|c| c.passed).sum()
    }

    pub fn skipped(&self) -> usize {
        self.checks.iter().map(|c| c.skipped).sum()
    }

    pub fn tally(&self, id: &str) -> Option<&CheckTally> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

struct Event {
    check: usize,
    outcome: Outcome,
    lattice: usize,
    partner: Option<usize>,
    monoid: Option<MonoidChoice>,
}

/// Resolves check identifiers; an empty list selects the whole registry.
pub fn select_checks(ids: &[String]) -> Result<Vec<&'static Check>, HarnessError> {
    if ids.is_empty() {
        return Ok(registry().iter().collect());
    }
    ids.iter()
        .map(|id| find_check(id).ok_or_else(|| HarnessError::UnknownCheck(id.clone())))
        .collect()
}

/// Ordered pairs `(i, i)` and `(i, i + 1)` whose product size is within
/// the cap; both members must be modular.
fn pairs(subjects: &[Subject], cap: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..subjects.len() {
        for j in [i, i + 1] {
            if j < subjects.len()
                && subjects[i].lattice.len() * subjects[j].lattice.len() <= cap
                && subjects[i].is_modular()
                && subjects[j].is_modular()
            {
                out.push((i, j));
            }
        }
    }
    out
}

fn run_subject(
    s: &Subject,
    idx: usize,
    checks: &[(usize, &Check)],
    config: &HarnessConfig,
) -> Vec<Event> {
    let mut events = Vec::new();
    for &(ci, check) in checks {
        let mut push = |outcome, monoid| {
            events.push(Event {
                check: ci,
                outcome,
                lattice: idx,
                partner: None,
                monoid,
            })
        };
        match check.runner {
            Runner::Pair(_) => {}
            _ if !s.is_modular() => {
                let n = match check.runner {
                    Runner::Monoid(_) => config.monoids.len(),
                    _ => 1,
                };
                for _ in 0..n {
                    push(Outcome::Skip("lattice is not modular".into()), None);
                }
            }
            Runner::Lattice(f) => push(f(s), None),
            Runner::Monoid(f) => {
                for &choice in &config.monoids {
                    let outcome = match s.monoid(choice) {
                        Ok(ctx) => f(s, &ctx),
                        Err(e) => Outcome::Skip(format!("monoid unavailable: {e}")),
                    };
                    push(outcome, Some(choice));
                }
            }
        }
    }
    events
}

/// Evaluates `checks` over `corpus` and tallies the outcomes.
///
/// Work is spread over lattices (and pairs) in parallel; the merge is in
/// corpus order, so the report depends only on the inputs.
pub fn run_conformance(
    corpus: &[Lattice],
    checks: &[&'static Check],
    config: &HarnessConfig,
) -> CorpusReport {
    let subjects: Vec<Subject> = corpus
        .iter()
        .map(|l| Subject::new(Arc::new(l.clone()), &config.limits))
        .collect();
    let indexed: Vec<(usize, &Check)> = checks.iter().copied().enumerate().collect();
    let pair_list = pairs(&subjects, config.max_pair_product);

    let mut events: Vec<Event> = subjects
        .par_iter()
        .enumerate()
        .map(|(i, s)| run_subject(s, i, &indexed, config))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let pair_checks: Vec<(usize, PairFn)> = indexed
        .iter()
        .filter_map(|&(ci, c)| match c.runner {
            Runner::Pair(f) => Some((ci, f)),
            _ => None,
        })
        .collect();
    if !pair_checks.is_empty() {
        let pair_events: Vec<Vec<Event>> = pair_list
            .par_iter()
            .map(|&(i, j)| {
                pair_checks
                    .iter()
                    .map(|&(ci, f)| Event {
                        check: ci,
                        outcome: f(&subjects[i], &subjects[j], &config.limits),
                        lattice: i,
                        partner: Some(j),
                        monoid: None,
                    })
                    .collect()
            })
            .collect();
        events.extend(pair_events.into_iter().flatten());
    }

    let mut tallies: Vec<CheckTally> = checks
        .iter()
        .map(|c| CheckTally {
            id: c.id.to_string(),
            scope: c.scope(),
            passed: 0,
            failed: 0,
            skipped: 0,
            skip_reasons: BTreeMap::new(),
        })
        .collect();
    let mut failures = Vec::new();
    for e in events {
        let t = &mut tallies[e.check];
        match e.outcome {
            Outcome::Pass => t.passed += 1,
            Outcome::Skip(reason) => {
                t.skipped += 1;
                *t.skip_reasons.entry(reason).or_insert(0) += 1;
            }
            Outcome::Fail(detail) => {
                t.failed += 1;
                failures.push(FailureRecord {
                    check: t.id.clone(),
                    lattice: corpus[e.lattice].to_spec(),
                    partner: e.partner.map(|j| corpus[j].to_spec()),
                    monoid: e.monoid,
                    detail,
                });
            }
        }
    }
    CorpusReport {
        schema_version: SCHEMA_VERSION,
        seed: config.seed,
        lattice_count: corpus.len(),
        pair_count: pair_list.len(),
        monoids: config.monoids.clone(),
        checks: tallies,
        failures,
    }
}

/// Evaluates one check on one lattice (and optional partner) under one
/// monoid, for replaying a failure record.
pub fn replay(
    check: &Check,
    lattice: &Lattice,
    partner: Option<&Lattice>,
    monoid: Option<MonoidChoice>,
    limits: &Limits,
) -> Outcome {
    let s = Subject::new(Arc::new(lattice.clone()), limits);
    if !s.is_modular() {
        return Outcome::Skip("lattice is not modular".into());
    }
    match check.runner {
        Runner::Lattice(f) => f(&s),
        Runner::Monoid(f) => match s.monoid(monoid.unwrap_or(MonoidChoice::Full)) {
            Ok(ctx) => f(&s, &ctx),
            Err(e) => Outcome::Skip(format!("monoid unavailable: {e}")),
        },
        Runner::Pair(f) => match partner {
            Some(p) => {
                let t = Subject::new(Arc::new(p.clone()), limits);
                if !t.is_modular() {
                    return Outcome::Skip("lattice is not modular".into());
                }
                f(&s, &t, limits)
            }
            None => Outcome::Skip("pair check needs a partner lattice".into()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn registry_is_complete_and_unique() {
        for id in REQUIRED_CHECKS {
            assert!(find_check(id).is_some(), "missing check {id}");
        }
        let mut ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
        ids.sort_unstable();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n, "duplicate check ids");
    }

    #[test]
    fn fixture_corpus_has_no_failures() {
        let report = run_conformance(
            &fixtures::corpus(),
            &select_checks(&[]).unwrap(),
            &HarnessConfig::default(),
        );
        assert!(report.failures.is_empty(), "{}", report.to_json());
        assert!(report.passed() > 0);
        // The pentagon is skipped, never failed.
        assert!(report.skipped() > 0);
    }

    #[test]
    fn reports_are_reproducible() {
        let corpus = random_corpus(7, 12, 6).unwrap();
        let checks = select_checks(&[]).unwrap();
        let config = HarnessConfig {
            seed: Some(7),
            ..HarnessConfig::default()
        };
        let a = run_conformance(&corpus, &checks, &config).to_json();
        let b = run_conformance(&corpus, &checks, &config).to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_check_rejected() {
        assert!(matches!(
            select_checks(&["nope".into()]),
            Err(HarnessError::UnknownCheck(_))
        ));
    }

    #[test]
    fn ricind2_on_c3_passes() {
        let c = find_check("ricind2").unwrap();
        assert_eq!(
            replay(c, &fixtures::c3(), None, None, &Limits::default()),
            Outcome::Pass
        );
    }
}
