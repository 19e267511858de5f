//! Verification sweeps over every proper shift pair of a given order.
//!
//! Each tree's matching expansion and each `γ`'s involution values are
//! computed once; the per-pair checks then only recombine them. Results are
//! assembled in a fixed order (pair, basis, λ) independent of scheduling.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gmf::{
    air_checks, monotone_checks, q1_checks, AirReport, AirTable, Gamma, MatchingExpansion,
    MonotoneMode, MonotoneReport, Q1Check,
};
use crate::gts::{proper_gts_pairs, GtsPair};
use crate::partition::Partition;
use crate::qpoly::XQPoly;
use crate::symfunc::{Basis, SymFunctions};

/// Multiplicity constraint for one part size in a [`LambdaPattern`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Mult {
    Exact(usize),
    Any,
}

/// Shape filter such as `2^k,1^*`, `3,2^2,1` or `all`.
///
/// Each term is `part` or `part^m`; `m` is a count, `*`, or a letter (any
/// multiplicity, zero included). Parts not mentioned must be absent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LambdaPattern {
    text: String,
    terms: Option<BTreeMap<usize, Mult>>,
}

impl LambdaPattern {
    pub fn all() -> Self {
        LambdaPattern {
            text: "all".into(),
            terms: None,
        }
    }

    pub fn matches(&self, lambda: &Partition) -> bool {
        let Some(terms) = &self.terms else {
            return true;
        };
        let mult = lambda.multiplicities();
        if mult.keys().any(|k| !terms.contains_key(k)) {
            return false;
        }
        terms.iter().all(|(part, m)| match m {
            Mult::Any => true,
            Mult::Exact(c) => mult.get(part).copied().unwrap_or(0) == *c,
        })
    }

    pub fn select<'a>(&'a self, partitions: &'a [Partition]) -> impl Iterator<Item = &'a Partition> {
        partitions.iter().filter(move |p| self.matches(p))
    }
}

impl Default for LambdaPattern {
    fn default() -> Self {
        LambdaPattern::all()
    }
}

impl FromStr for LambdaPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        if text.is_empty() || text.eq_ignore_ascii_case("all") {
            return Ok(LambdaPattern::all());
        }
        let bad = || Error::Parse(format!("invalid lambda pattern {text:?}"));
        let inner = text.trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let mut terms: BTreeMap<usize, Mult> = BTreeMap::new();
        for term in inner.split(',').map(str::trim) {
            let (part, mult) = match term.split_once('^') {
                Some((p, m)) => {
                    let m = m.trim();
                    let mult = if m == "*" || m.chars().all(|c| c.is_ascii_alphabetic()) && !m.is_empty() {
                        Mult::Any
                    } else {
                        Mult::Exact(m.parse().map_err(|_| bad())?)
                    };
                    (p.trim(), mult)
                }
                None => (term, Mult::Exact(1)),
            };
            let part: usize = part.parse().map_err(|_| bad())?;
            if part == 0 {
                return Err(bad());
            }
            let merged = match (terms.get(&part), mult) {
                (None, m) => m,
                (Some(Mult::Exact(a)), Mult::Exact(b)) => Mult::Exact(a + b),
                _ => Mult::Any,
            };
            terms.insert(part, merged);
        }
        Ok(LambdaPattern {
            text: text.to_string(),
            terms: Some(terms),
        })
    }
}

impl fmt::Display for LambdaPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

/// Which difference to test for each basis.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeChoice {
    /// Absolute for `f`, signed for the other bases.
    #[default]
    Auto,
    Signed,
    Absolute,
}

impl ModeChoice {
    pub fn for_basis(self, basis: Basis) -> MonotoneMode {
        match (self, basis) {
            (ModeChoice::Signed, _) => MonotoneMode::Signed,
            (ModeChoice::Absolute, _) => MonotoneMode::Absolute,
            (ModeChoice::Auto, Basis::F) => MonotoneMode::Absolute,
            (ModeChoice::Auto, _) => MonotoneMode::Signed,
        }
    }
}

impl FromStr for ModeChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(ModeChoice::Auto),
            "signed" => Ok(ModeChoice::Signed),
            "absolute" | "abs" => Ok(ModeChoice::Absolute),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub n: usize,
    pub bases: Vec<Basis>,
    pub lambda: LambdaPattern,
    pub mode: ModeChoice,
    /// Worker count; `None` uses every core.
    pub jobs: Option<usize>,
}

impl SweepConfig {
    pub fn new(n: usize) -> Self {
        SweepConfig {
            n,
            bases: Basis::ALL.to_vec(),
            lambda: LambdaPattern::all(),
            mode: ModeChoice::Auto,
            jobs: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Config(format!("n must be at least 2, got {}", self.n)));
        }
        if self.bases.is_empty() {
            return Err(Error::Config("no bases selected".into()));
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("jobs must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Q1Report {
    pub pair: GtsPair,
    pub basis: Option<Basis>,
    pub lambda: Option<Partition>,
    #[serde(rename = "perR")]
    pub per_r: Vec<Q1Check>,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: usize,
    pub failed: usize,
}

impl Tally {
    fn of<'a>(passes: impl Iterator<Item = &'a bool>) -> Self {
        let mut t = Tally::default();
        for &p in passes {
            t.checked += 1;
            t.failed += usize::from(!p);
        }
        t
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub n: usize,
    pub pairs: usize,
    pub gammas: usize,
    pub monotone: Tally,
    pub air: Tally,
    #[serde(rename = "q1")]
    pub q_one: Tally,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub summary: SweepSummary,
    pub monotone: Vec<MonotoneReport>,
    pub air: Vec<AirReport>,
    #[serde(rename = "q1")]
    pub q_one: Vec<Q1Report>,
}

impl SweepReport {
    pub fn pass(&self) -> bool {
        self.summary.pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &MonotoneReport> {
        self.monotone.iter().filter(|r| !r.pass)
    }
}

/// Per-tree data shared by every pair touching that tree.
struct TreeData {
    expansion: MatchingExpansion,
    air: AirTable,
}

fn with_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::Config(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    with_pool(config.jobs, || sweep_inner(config))?
}

fn sweep_inner(config: &SweepConfig) -> Result<SweepReport> {
    let n = config.n;
    let sf = SymFunctions::new(n);
    let pairs = proper_gts_pairs(n);

    let mut trees: Vec<&crate::tree::LabeledTree> = Vec::new();
    let mut uppers = Vec::with_capacity(pairs.len());
    for pair in &pairs {
        uppers.push(pair.upper_tree());
    }
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut pair_idx = Vec::with_capacity(pairs.len());
    for (pair, upper) in pairs.iter().zip(&uppers) {
        let mut slot = |code: &str, t| {
            *index.entry(code.to_string()).or_insert_with(|| {
                trees.push(t);
                trees.len() - 1
            })
        };
        let lo = slot(pair.lower.code(), pair.lower_tree());
        let up = slot(pair.upper.code(), upper);
        pair_idx.push((lo, up));
    }

    let data: Vec<TreeData> = trees
        .par_iter()
        .map(|t| {
            let expansion = MatchingExpansion::new(t);
            let air = AirTable::with_expansion(t, &sf, &expansion)?;
            Ok(TreeData { expansion, air })
        })
        .collect::<Result<_>>()?;

    let gammas: Vec<Gamma> = config
        .bases
        .iter()
        .flat_map(|&b| config.lambda.select(sf.partitions()).map(move |l| (b, l)))
        .map(|(b, l)| Gamma::basis(&sf, b, l))
        .collect::<Result<_>>()?;
    let involution: Vec<_> = gammas.par_iter().map(Gamma::involution_values).collect();

    // polys[g][t]
    let polys: Vec<Vec<XQPoly>> = involution
        .par_iter()
        .map(|vals| data.iter().map(|d| d.expansion.evaluate(vals)).collect())
        .collect();

    let per_pair: Vec<(Vec<MonotoneReport>, Vec<Q1Report>, AirReport)> = pairs
        .par_iter()
        .zip(&pair_idx)
        .map(|(pair, &(lo, up))| {
            let mut mono = Vec::with_capacity(gammas.len());
            let mut q1 = Vec::with_capacity(gammas.len());
            for (g, gamma) in gammas.iter().enumerate() {
                let basis = gamma.basis_tag().expect("sweep uses basis elements");
                let mode = config.mode.for_basis(basis);
                let (a, b) = (&polys[g][lo], &polys[g][up]);
                mono.push(MonotoneReport::new(pair, gamma, mode, monotone_checks(a, b, mode)));
                let per_r = q1_checks(a, b);
                q1.push(Q1Report {
                    pair: pair.clone(),
                    basis: Some(basis),
                    lambda: gamma.lambda().cloned(),
                    pass: per_r.iter().all(|c| c.pass),
                    per_r,
                });
            }
            let entries = air_checks(&data[lo].air, &data[up].air);
            let air = AirReport {
                pair: pair.clone(),
                pass: entries.iter().all(|c| c.pass),
                entries,
            };
            (mono, q1, air)
        })
        .collect();

    let mut monotone = Vec::new();
    let mut q_one = Vec::new();
    let mut air = Vec::new();
    for (m, q, a) in per_pair {
        monotone.extend(m);
        q_one.extend(q);
        air.push(a);
    }
    let mono_t = Tally::of(monotone.iter().map(|r| &r.pass));
    let air_t = Tally::of(air.iter().map(|r| &r.pass));
    let q1_t = Tally::of(q_one.iter().map(|r| &r.pass));
    Ok(SweepReport {
        summary: SweepSummary {
            n,
            pairs: pairs.len(),
            gammas: gammas.len(),
            monotone: mono_t,
            air: air_t,
            q_one: q1_t,
            pass: mono_t.failed + air_t.failed + q1_t.failed == 0,
        },
        monotone,
        air,
        q_one,
    })
}
