//! Combinatorial lower bounds on randomness via support structures: for each
//! secret, the set of share triples the dealer can emit. Correctness forces
//! the views of secrets that differ for a party apart; privacy forces the
//! views of secrets that agree for a party to coincide as sets. Since every
//! randomness value contributes one triple, no structure with all sets of
//! size at most `k` means every scheme needs more than `k` randomness values.

mod search;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::domain::Domain;
use crate::scheme::{verify, Scheme};

pub use search::{certified_lower_bound, search, CertifiedBound, FeasibilityVerdict, SearchBudget};

/// A share triple `(w12, w23, w31)` over abstract symbol indices.
pub type ShareTriple = [usize; 3];

/// Triple coordinates seen by each party: party 1 holds (W12, W31), party 2
/// (W23, W12), party 3 (W31, W23).
pub(crate) const VIEW_COORDS: [[usize; 2]; 3] = [[0, 2], [1, 0], [2, 1]];

pub(crate) fn view_of(t: &ShareTriple, party: usize) -> [usize; 2] {
    let [a, b] = VIEW_COORDS[party];
    [t[a], t[b]]
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("scheme does not verify: {0}")]
    Unverified(String),
    #[error("search budget of {nodes} nodes exhausted before a verdict")]
    BudgetExceeded { nodes: u64 },
    #[error("size cap must be at least 1")]
    ZeroCap,
    #[error("structure has {got} sets for a domain of {want} secrets")]
    Shape { got: usize, want: usize },
}

/// Per secret (in domain member order), the set of share triples it can produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportStructure {
    pub domain: Domain,
    pub cap: usize,
    pub sets: Vec<BTreeSet<ShareTriple>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureViolation {
    EmptySet { x: String },
    OverCap { x: String, size: usize, cap: usize },
    /// A party sees the same view under secrets it must tell apart.
    Separation { party: usize, x: String, x_prime: String, view: [usize; 2] },
    /// A party sees a view under one secret but not under another it must not tell apart.
    Privacy { party: usize, x: String, x_prime: String, view: [usize; 2] },
}

impl fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureViolation::EmptySet { x } => write!(f, "M_{x} is empty"),
            StructureViolation::OverCap { x, size, cap } => write!(f, "|M_{x}| = {size} exceeds cap {cap}"),
            StructureViolation::Separation { party, x, x_prime, view } => write!(
                f,
                "correctness fails for party {party}: view {view:?} occurs under both {x} and {x_prime}"
            ),
            StructureViolation::Privacy { party, x, x_prime, view } => {
                write!(f, "privacy fails for party {party}: view {view:?} occurs under {x} but not {x_prime}")
            }
        }
    }
}

impl SupportStructure {
    pub fn new(domain: Domain, cap: usize, sets: Vec<BTreeSet<ShareTriple>>) -> Result<Self, CertifyError> {
        if sets.len() != domain.len() {
            return Err(CertifyError::Shape { got: sets.len(), want: domain.len() });
        }
        Ok(SupportStructure { domain, cap, sets })
    }

    /// Number of symbols used on each share.
    pub fn alphabet_sizes(&self) -> [usize; 3] {
        [0, 1, 2].map(|c| self.sets.iter().flatten().map(|t| t[c]).collect::<BTreeSet<_>>().len())
    }

    pub fn largest_set(&self) -> usize {
        self.sets.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// One line per secret: `x : (A0,B1,C2) (A1,B0,C0) ...`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (x, set) in self.domain.members().iter().zip(&self.sets) {
            let triples: Vec<String> = set.iter().map(|t| format!("(A{},B{},C{})", t[0], t[1], t[2])).collect();
            out.push_str(&format!("{} : {}\n", self.domain.format_secret(x), triples.join(" ")));
        }
        out
    }
}

/// Checks non-emptiness, the size cap, correctness separation and support
/// privacy for every party and pair of secrets.
pub fn check_structure(s: &SupportStructure) -> Result<(), StructureViolation> {
    let d = &s.domain;
    let name = |m: usize| d.format_secret(&d.members()[m]);
    for (m, set) in s.sets.iter().enumerate() {
        if set.is_empty() {
            return Err(StructureViolation::EmptySet { x: name(m) });
        }
        if set.len() > s.cap {
            return Err(StructureViolation::OverCap { x: name(m), size: set.len(), cap: s.cap });
        }
    }
    let views: Vec<[BTreeSet<[usize; 2]>; 3]> =
        s.sets.iter().map(|set| [0, 1, 2].map(|i| set.iter().map(|t| view_of(t, i)).collect())).collect();
    for i in 0..3 {
        for m in 0..d.len() {
            for n in 0..d.len() {
                if m == n {
                    continue;
                }
                let same = d.members()[m].coord(i) == d.members()[n].coord(i);
                let (vm, vn) = (&views[m][i], &views[n][i]);
                if same {
                    if let Some(v) = vm.iter().find(|v| !vn.contains(*v)) {
                        return Err(StructureViolation::Privacy { party: i + 1, x: name(m), x_prime: name(n), view: *v });
                    }
                } else if let Some(v) = vm.intersection(vn).next() {
                    return Err(StructureViolation::Separation { party: i + 1, x: name(m), x_prime: name(n), view: *v });
                }
            }
        }
    }
    Ok(())
}

/// The supports of a verified scheme's share distributions, with cap `|R|`.
pub fn extract_structure(s: &Scheme) -> Result<SupportStructure, CertifyError> {
    let report = verify(s);
    if !report.passed() {
        return Err(CertifyError::Unverified(report.counterexample.map(|c| c.describe(s)).unwrap_or_default()));
    }
    let sets = (0..s.domain().len())
        .map(|m| (0..s.randomness().len()).map(|r| s.shares(m, r)).collect())
        .collect();
    SupportStructure::new(s.domain().clone(), s.randomness().len(), sets)
}
