//! Distribution schemes `(P_R, ψ)` for three secrets and three pairwise shares.

mod assign;
mod canonical;
mod format;
mod joint;
mod reduced;
mod transport;
mod verify;

use num::{One, Signed};
use thiserror::Error;

use crate::bits::Log2;
use crate::domain::{Domain, DomainError, Secret};
use crate::info::{Exact, InfoError};

pub use assign::{assigned_scheme, frozen_assignments, search_scheme, Construction};
pub use canonical::{canonical_rule, canonical_scheme, validity_domain};
pub use format::parse_scheme;
pub use joint::{induced_joint, secret_pmf, SHARE_AXES};
pub use reduced::reduced_scheme;
pub use transport::transport_scheme;
pub use verify::{
    verify, verify_correctness, verify_privacy, CorrectnessReport, Counterexample, PrivacyReport,
    ReconstructionTriple, VerificationReport, ViolationKind,
};

/// One of the three shares, named by the pair of parties holding it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Edge {
    W12,
    W23,
    W31,
}

impl Edge {
    pub const ALL: [Edge; 3] = [Edge::W12, Edge::W23, Edge::W31];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Edge {
        Edge::ALL[i]
    }

    /// The share held by parties `a` and `b` (0-based, distinct).
    pub fn between(a: usize, b: usize) -> Edge {
        match (a.min(b), a.max(b)) {
            (0, 1) => Edge::W12,
            (1, 2) => Edge::W23,
            (0, 2) => Edge::W31,
            _ => panic!("no share between parties {a} and {b}"),
        }
    }

    pub fn parties(self) -> (usize, usize) {
        match self {
            Edge::W12 => (0, 1),
            Edge::W23 => (1, 2),
            Edge::W31 => (2, 0),
        }
    }

    pub fn touches(self, party: usize) -> bool {
        let (a, b) = self.parties();
        a == party || b == party
    }

    pub fn name(self) -> &'static str {
        match self {
            Edge::W12 => "W12",
            Edge::W23 => "W23",
            Edge::W31 => "W31",
        }
    }
}

/// The two shares party `i` holds: party 1 sees (W12, W31), party 2 sees
/// (W23, W12), party 3 sees (W31, W23).
pub const VIEW_EDGES: [[Edge; 2]; 3] = [[Edge::W12, Edge::W31], [Edge::W23, Edge::W12], [Edge::W31, Edge::W23]];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchemeError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Info(#[from] InfoError),
    #[error("randomness is empty")]
    NoRandomness,
    #[error("randomness value `{0}` has non-positive probability")]
    NonPositiveProbability(String),
    #[error("randomness probabilities sum to {0}, not 1")]
    NotNormalized(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("share alphabet {0} is empty")]
    EmptyShareAlphabet(&'static str),
    #[error("encoder table has the wrong shape")]
    EncoderShape,
    #[error("encoder output for secret {x} is outside the {edge} alphabet")]
    ShareOutOfAlphabet { x: String, edge: &'static str },
    #[error("domain is not contained in the validity domain of scheme {id}")]
    OutsideValidity { id: u8 },
    #[error("no family with id {0}")]
    UnknownFamily(u8),
    #[error("no canonical scheme with id {0}")]
    UnknownCanonical(u8),
    #[error("malformed plan: {0}")]
    MalformedPlan(String),
    #[error("secret distribution puts mass on {0}, outside the domain")]
    MassOutsideDomain(String),
    #[error("secret distribution axes do not match the domain alphabets")]
    AxesMismatch,
    #[error("scheme fails verification: {0}")]
    Unverified(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A dealer: a randomness distribution and a total encoder from
/// (secret, randomness) to a share triple.
#[derive(Clone, Debug, PartialEq)]
pub struct Scheme {
    domain: Domain,
    randomness: Vec<(String, Exact)>,
    share_alphabets: [Vec<String>; 3],
    /// `encoder[m][r]` is the share triple (indices into the share alphabets)
    /// for domain member `m` and randomness value `r`.
    encoder: Vec<Vec<[usize; 3]>>,
}

fn check_unique(symbols: &[String]) -> Result<(), SchemeError> {
    for (i, s) in symbols.iter().enumerate() {
        if symbols[..i].contains(s) {
            return Err(SchemeError::DuplicateSymbol(s.clone()));
        }
    }
    Ok(())
}

impl Scheme {
    pub fn new(
        domain: Domain,
        randomness: Vec<(String, Exact)>,
        share_alphabets: [Vec<String>; 3],
        encoder: Vec<Vec<[usize; 3]>>,
    ) -> Result<Self, SchemeError> {
        if randomness.is_empty() {
            return Err(SchemeError::NoRandomness);
        }
        let names: Vec<String> = randomness.iter().map(|(r, _)| r.clone()).collect();
        check_unique(&names)?;
        if let Some((r, _)) = randomness.iter().find(|(_, p)| !p.is_positive()) {
            return Err(SchemeError::NonPositiveProbability(r.clone()));
        }
        let total = randomness.iter().fold(Exact::from_integer(0.into()), |s, (_, p)| s + p);
        if !total.is_one() {
            return Err(SchemeError::NotNormalized(total.to_string()));
        }
        for (e, alpha) in share_alphabets.iter().enumerate() {
            if alpha.is_empty() {
                return Err(SchemeError::EmptyShareAlphabet(Edge::from_index(e).name()));
            }
            check_unique(alpha)?;
        }
        if encoder.len() != domain.len() || encoder.iter().any(|row| row.len() != randomness.len()) {
            return Err(SchemeError::EncoderShape);
        }
        for (m, row) in encoder.iter().enumerate() {
            for w in row {
                if let Some(e) = (0..3).find(|&e| w[e] >= share_alphabets[e].len()) {
                    return Err(SchemeError::ShareOutOfAlphabet {
                        x: domain.format_secret(&domain.members()[m]),
                        edge: Edge::from_index(e).name(),
                    });
                }
            }
        }
        Ok(Scheme { domain, randomness, share_alphabets, encoder })
    }

    /// Builds a scheme from symbolic shares; share alphabets are the sorted
    /// sets of symbols produced.
    pub fn from_fn(
        domain: Domain,
        randomness: Vec<(String, Exact)>,
        mut encode: impl FnMut(&Secret, usize) -> [String; 3],
    ) -> Result<Self, SchemeError> {
        let raw: Vec<Vec<[String; 3]>> = domain
            .members()
            .iter()
            .map(|x| (0..randomness.len()).map(|r| encode(x, r)).collect())
            .collect();
        let share_alphabets: [Vec<String>; 3] = [0, 1, 2].map(|e| {
            let mut a: Vec<String> = raw.iter().flatten().map(|w| w[e].clone()).collect();
            a.sort();
            a.dedup();
            a
        });
        Self::from_symbols(domain, randomness, share_alphabets, raw)
    }

    pub(crate) fn from_symbols(
        domain: Domain,
        randomness: Vec<(String, Exact)>,
        share_alphabets: [Vec<String>; 3],
        raw: Vec<Vec<[String; 3]>>,
    ) -> Result<Self, SchemeError> {
        let mut encoder = Vec::with_capacity(raw.len());
        for (m, row) in raw.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for w in row {
                let mut idx = [0usize; 3];
                for e in 0..3 {
                    idx[e] = share_alphabets[e].iter().position(|s| *s == w[e]).ok_or_else(|| {
                        SchemeError::ShareOutOfAlphabet {
                            x: domain.format_secret(&domain.members()[m]),
                            edge: Edge::from_index(e).name(),
                        }
                    })?;
                }
                out.push(idx);
            }
            encoder.push(out);
        }
        Scheme::new(domain, randomness, share_alphabets, encoder)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn randomness(&self) -> &[(String, Exact)] {
        &self.randomness
    }

    pub fn share_alphabets(&self) -> &[Vec<String>; 3] {
        &self.share_alphabets
    }

    /// Share triple for domain member index `m` and randomness index `r`.
    pub fn shares(&self, m: usize, r: usize) -> [usize; 3] {
        self.encoder[m][r]
    }

    pub fn share_symbol(&self, edge: Edge, index: usize) -> &str {
        &self.share_alphabets[edge.index()][index]
    }

    /// The pair of share indices party `i` observes.
    pub fn view(&self, party: usize, w: [usize; 3]) -> (usize, usize) {
        let [a, b] = VIEW_EDGES[party];
        (w[a.index()], w[b.index()])
    }

    pub fn randomness_size(&self) -> Log2 {
        Log2(self.randomness.len() as u64)
    }

    /// The same encoder on a subset of the domain.
    pub fn restrict(&self, sub: &Domain) -> Result<Scheme, SchemeError> {
        if sub.alphabets() != self.domain.alphabets() {
            return Err(SchemeError::AxesMismatch);
        }
        let mut encoder = Vec::with_capacity(sub.len());
        for x in sub.members() {
            let m = self
                .domain
                .index_of(x)
                .ok_or_else(|| DomainError::NotAMember(sub.format_secret(x)))?;
            encoder.push(self.encoder[m].clone());
        }
        Scheme::new(sub.clone(), self.randomness.clone(), self.share_alphabets.clone(), encoder)
    }
}

/// `log2 |R|`: the number of random bits the dealer uses.
pub fn randomness_complexity(s: &Scheme) -> f64 {
    s.randomness_size().value()
}

pub(crate) fn uniform_randomness(names: Vec<String>) -> Vec<(String, Exact)> {
    let n = names.len() as i64;
    names.into_iter().map(|r| (r, crate::info::ratio(1, n))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::ratio;

    #[test]
    fn constant_scheme() {
        let d = Domain::from_bitstrings(&["000"]).unwrap();
        let s = Scheme::from_fn(d, vec![("-".into(), ratio(1, 1))], |_, _| ["-".into(), "-".into(), "-".into()])
            .unwrap();
        assert_eq!(randomness_complexity(&s), 0.0);
        assert!(verify(&s).passed());
    }

    #[test]
    fn rejects_bad_randomness() {
        let d = Domain::from_bitstrings(&["000"]).unwrap();
        let enc = |_: &Secret, _: usize| ["0".to_string(), "0".to_string(), "0".to_string()];
        let half = vec![("a".to_string(), ratio(1, 2))];
        assert!(matches!(Scheme::from_fn(d.clone(), half, enc), Err(SchemeError::NotNormalized(_))));
        let zero = vec![("a".to_string(), ratio(1, 1)), ("b".to_string(), ratio(0, 1))];
        assert!(matches!(Scheme::from_fn(d, zero, enc), Err(SchemeError::NonPositiveProbability(_))));
    }

    #[test]
    fn edges() {
        assert_eq!(Edge::between(2, 0), Edge::W31);
        for p in 0..3 {
            assert!(VIEW_EDGES[p].iter().all(|e| e.touches(p)));
        }
    }
}
