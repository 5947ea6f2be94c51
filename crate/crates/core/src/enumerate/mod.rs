//! Batch verification over families of loop/chain polynomials and their
//! Thom–Sebastiani sums.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::polynomial::{AtomKind, InvertiblePolynomial};
use crate::zeta::{check_theorem, verify_corollary_with, VerificationReport};

pub const MAX_VARS_RANGE: (usize, usize) = (1, 8);
pub const MAX_EXP_RANGE: (u64, u64) = (2, 9);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub max_vars: usize,
    pub max_exp: u64,
    pub include_loops: bool,
    pub include_chains: bool,
    pub include_sums: bool,
    /// Draw this many random sums instead of listing all of them.
    pub sample_sums: Option<usize>,
    pub seed: u64,
    /// Stop generating after this many polynomials and mark the run
    /// truncated.
    pub limit: Option<usize>,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            max_vars: 4,
            max_exp: 5,
            include_loops: true,
            include_chains: true,
            include_sums: false,
            sample_sums: None,
            seed: 0,
            limit: None,
        }
    }
}

impl EnumerationConfig {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = MAX_VARS_RANGE;
        if self.max_vars < lo || self.max_vars > hi {
            return Err(Error::Precondition(format!(
                "max-vars must be between {lo} and {hi}, got {}",
                self.max_vars
            )));
        }
        let (lo, hi) = MAX_EXP_RANGE;
        if self.max_exp < lo || self.max_exp > hi {
            return Err(Error::Precondition(format!(
                "max-exp must be between {lo} and {hi}, got {}",
                self.max_exp
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "maxVars": self.max_vars,
            "maxExp": self.max_exp,
            "loops": self.include_loops,
            "chains": self.include_chains,
            "sums": self.include_sums,
            "sampleSums": self.sample_sums,
            "seed": self.seed,
            "limit": self.limit,
        })
    }
}

/// Kind plus exponents; loops are stored in their least rotation.
pub type AtomSignature = (AtomKind, Vec<u64>);

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub polynomial: InvertiblePolynomial,
    /// Sorted atom signatures; two entries are permutation-equivalent iff
    /// these agree (all exponents are at least 2, so the splitting into
    /// atoms is unique).
    pub atoms: Vec<AtomSignature>,
}

impl CorpusEntry {
    pub fn label(&self) -> String {
        self.atoms
            .iter()
            .map(|(kind, e)| {
                let name = match kind {
                    AtomKind::Chain => "chain",
                    AtomKind::Loop => "loop",
                };
                let list: Vec<String> = e.iter().map(u64::to_string).collect();
                format!("{name}({})", list.join(","))
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    pub truncated: bool,
}

fn build(atoms: &[AtomSignature]) -> Result<InvertiblePolynomial> {
    let parts = atoms
        .iter()
        .map(|(kind, e)| match kind {
            AtomKind::Chain => InvertiblePolynomial::chain(e),
            AtomKind::Loop => InvertiblePolynomial::loop_type(e),
        })
        .collect::<Result<Vec<_>>>()?;
    if parts.len() == 1 {
        Ok(parts.into_iter().next().expect("one part"))
    } else {
        InvertiblePolynomial::thom_sebastiani(&parts)
    }
}

fn least_rotation(e: &[u64]) -> Vec<u64> {
    (0..e.len())
        .map(|r| (0..e.len()).map(|i| e[(r + i) % e.len()]).collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Advances `t` to the next tuple over `2..=max_exp`; false after the last.
fn next_tuple(t: &mut [u64], max_exp: u64) -> bool {
    for x in t.iter_mut().rev() {
        if *x < max_exp {
            *x += 1;
            return true;
        }
        *x = 2;
    }
    false
}

/// Atoms on at most `config.max_vars` variables, sorted by size and then
/// signature, together with whether `cap` stopped the listing early.
pub fn atoms(config: &EnumerationConfig, cap: usize) -> (Vec<AtomSignature>, bool) {
    let mut list = Vec::new();
    let mut truncated = false;
    'sizes: for len in 1..=config.max_vars {
        let mut t = vec![2u64; len];
        loop {
            if config.include_chains {
                list.push((AtomKind::Chain, t.clone()));
            }
            if config.include_loops && len >= 2 && least_rotation(&t) == t {
                list.push((AtomKind::Loop, t.clone()));
            }
            if list.len() > cap {
                list.truncate(cap);
                truncated = true;
                break 'sizes;
            }
            if !next_tuple(&mut t, config.max_exp) {
                break;
            }
        }
    }
    list.sort_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| a.cmp(b)));
    (list, truncated)
}

/// Generates the corpus described by `config`, in a fixed order.
pub fn corpus(config: &EnumerationConfig) -> Result<Corpus> {
    config.validate()?;
    let limit = config.limit.unwrap_or(usize::MAX);
    let (atoms, mut truncated) = atoms(config, limit);
    let mut keys: Vec<Vec<AtomSignature>> = atoms.iter().map(|a| vec![a.clone()]).collect();
    if config.include_sums && !truncated {
        match config.sample_sums {
            None => truncated = all_sums(&atoms, config.max_vars, limit, &mut keys),
            Some(count) => truncated = sample_sums(&atoms, config, count, limit, &mut keys),
        }
    }
    let entries = keys
        .into_par_iter()
        .map(|mut atoms| {
            atoms.sort();
            Ok(CorpusEntry {
                polynomial: build(&atoms)?,
                atoms,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Corpus { entries, truncated })
}

/// Multisets of at least two atoms with at most `max_vars` variables in
/// total, as non-decreasing index sequences. Returns whether `limit` cut
/// the list short.
fn all_sums(
    atoms: &[AtomSignature],
    max_vars: usize,
    limit: usize,
    out: &mut Vec<Vec<AtomSignature>>,
) -> bool {
    fn go(
        atoms: &[AtomSignature],
        start: usize,
        budget: usize,
        chosen: &mut Vec<usize>,
        limit: usize,
        out: &mut Vec<Vec<AtomSignature>>,
    ) -> bool {
        for i in start..atoms.len() {
            let size = atoms[i].1.len();
            if size > budget {
                // atoms are sorted by size
                break;
            }
            chosen.push(i);
            if chosen.len() >= 2 {
                if out.len() >= limit {
                    return true;
                }
                out.push(chosen.iter().map(|&j| atoms[j].clone()).collect());
            }
            if go(atoms, i, budget - size, chosen, limit, out) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(atoms, 0, max_vars, &mut Vec::new(), limit, out)
}

fn sample_sums(
    atoms: &[AtomSignature],
    config: &EnumerationConfig,
    count: usize,
    limit: usize,
    out: &mut Vec<Vec<AtomSignature>>,
) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut seen = BTreeSet::new();
    let fitting: Vec<&AtomSignature> = atoms.iter().filter(|a| a.1.len() < config.max_vars).collect();
    if fitting.is_empty() {
        return false;
    }
    // bounded number of draws so tiny families cannot loop forever
    for _ in 0..count.saturating_mul(20) {
        if seen.len() >= count {
            break;
        }
        let mut budget = config.max_vars;
        let mut parts: Vec<AtomSignature> = Vec::new();
        let target = rng.gen_range(2..=config.max_vars.max(2));
        while parts.len() < target {
            let options: Vec<&&AtomSignature> = fitting.iter().filter(|a| a.1.len() <= budget).collect();
            let Some(pick) = options.choose(&mut rng) else {
                break;
            };
            budget -= pick.1.len();
            parts.push((**pick).clone());
        }
        if parts.len() < 2 {
            continue;
        }
        parts.sort();
        if seen.insert(parts.clone()) {
            if out.len() >= limit {
                return true;
            }
            out.push(parts);
        }
    }
    false
}

/// Outcome for one polynomial.
#[derive(Debug, Clone)]
pub struct EntryResult {
    pub entry: CorpusEntry,
    pub theorem: std::result::Result<VerificationReport, String>,
    /// `None` when `G_f` is not cyclic.
    pub corollary: Option<std::result::Result<VerificationReport, String>>,
    /// Per-subset terms of both sides, kept for failure reports.
    pub audit: Value,
}

impl EntryResult {
    pub fn theorem_passed(&self) -> bool {
        matches!(&self.theorem, Ok(r) if r.equal)
    }

    pub fn corollary_passed(&self) -> Option<bool> {
        self.corollary.as_ref().map(|c| matches!(c, Ok(r) if r.equal))
    }
}

pub fn verify_entry(entry: &CorpusEntry) -> EntryResult {
    let f = &entry.polynomial;
    match check_theorem(f) {
        Err(e) => EntryResult {
            entry: entry.clone(),
            theorem: Err(e.to_string()),
            corollary: None,
            audit: Value::Null,
        },
        Ok(check) => {
            let corollary = check
                .direct
                .group
                .is_cyclic()
                .then(|| verify_corollary_with(f, &check).map_err(|e| e.to_string()));
            let audit = json!({
                "direct": check.direct.to_json(),
                "transposed": check.transposed.to_json(),
            });
            EntryResult {
                entry: entry.clone(),
                theorem: Ok(check.report),
                corollary,
                audit,
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnumerationSummary {
    pub config: EnumerationConfig,
    pub results: Vec<EntryResult>,
    pub truncated: bool,
}

impl EnumerationSummary {
    pub fn total(&self) -> usize {
        self.results.len()
    }

    pub fn theorem_pass(&self) -> usize {
        self.results.iter().filter(|r| r.theorem_passed()).count()
    }

    pub fn theorem_fail(&self) -> usize {
        self.total() - self.theorem_pass()
    }

    pub fn corollary_checked(&self) -> usize {
        self.results.iter().filter(|r| r.corollary.is_some()).count()
    }

    pub fn corollary_pass(&self) -> usize {
        self.results
            .iter()
            .filter(|r| r.corollary_passed() == Some(true))
            .count()
    }

    pub fn corollary_fail(&self) -> usize {
        self.corollary_checked() - self.corollary_pass()
    }

    pub fn failures(&self) -> Vec<Value> {
        let mut out = Vec::new();
        for r in &self.results {
            let f = &r.entry.polynomial;
            let mut record = |kind: &str, outcome: &std::result::Result<VerificationReport, String>| {
                let report = match outcome {
                    Ok(rep) => rep.to_json(),
                    Err(msg) => json!({ "error": msg }),
                };
                out.push(json!({
                    "polynomial": f.to_string(),
                    "family": r.entry.label(),
                    "E": crate::json::matrix(f.exponents()),
                    "kind": kind,
                    "report": report,
                    "audit": r.audit,
                }));
            };
            if !r.theorem_passed() {
                record("theorem", &r.theorem);
            }
            if let (Some(false), Some(c)) = (r.corollary_passed(), &r.corollary) {
                record("corollary", c);
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "total": self.total(),
            "theoremPass": self.theorem_pass(),
            "theoremFail": self.theorem_fail(),
            "corollaryChecked": self.corollary_checked(),
            "corollaryPass": self.corollary_pass(),
            "corollaryFail": self.corollary_fail(),
            "failures": self.failures(),
            "truncated": self.truncated,
        })
    }
}

/// Generates the corpus and checks every entry in parallel; results keep
/// the corpus order.
pub fn run(config: &EnumerationConfig) -> Result<EnumerationSummary> {
    let corpus = corpus(config)?;
    let results: Vec<EntryResult> = corpus.entries.par_iter().map(verify_entry).collect();
    Ok(EnumerationSummary {
        config: config.clone(),
        results,
        truncated: corpus.truncated,
    })
}
