use std::collections::BTreeMap;

use num::Zero;

use super::{Scheme, VIEW_EDGES};
use crate::domain::Secret;
use crate::info::Exact;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// The same view occurs under two secrets with different `x_i`.
    Correctness,
    /// Two secrets agreeing on `x_i` induce different view distributions.
    Privacy,
}

/// A witness that party `party` (0-based) breaks a condition: `view` is
/// the offending share pair (indices into the party's two share alphabets).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub party: usize,
    pub kind: ViolationKind,
    pub x: Secret,
    pub x_prime: Secret,
    pub view: (usize, usize),
}

impl Counterexample {
    pub fn describe(&self, s: &Scheme) -> String {
        let [e1, e2] = VIEW_EDGES[self.party];
        let d = s.domain();
        let what = match self.kind {
            ViolationKind::Correctness => "correctness",
            ViolationKind::Privacy => "privacy",
        };
        format!(
            "{what} fails for party {}: view ({}={}, {}={}) under x={} and x'={}",
            self.party + 1,
            e1.name(),
            s.share_symbol(e1, self.view.0),
            e2.name(),
            s.share_symbol(e2, self.view.1),
            d.format_secret(&self.x),
            d.format_secret(&self.x_prime),
        )
    }
}

/// Per-party reconstruction maps from observed share pairs to the party's
/// secret symbol index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReconstructionTriple {
    pub maps: [BTreeMap<(usize, usize), usize>; 3],
}

impl ReconstructionTriple {
    pub fn reconstruct(&self, party: usize, view: (usize, usize)) -> Option<usize> {
        self.maps[party].get(&view).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectnessReport {
    pub correct: [bool; 3],
    pub counterexample: Option<Counterexample>,
    /// Maps are complete for parties that pass.
    pub reconstruction: ReconstructionTriple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrivacyReport {
    pub private: [bool; 3],
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub correct: [bool; 3],
    pub private: [bool; 3],
    /// The first violation found; present whenever a check fails.
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.correct.iter().chain(&self.private).all(|&b| b)
    }
}

pub fn verify_correctness(s: &Scheme) -> CorrectnessReport {
    let members = s.domain().members();
    let mut correct = [true; 3];
    let mut counterexample = None;
    let mut reconstruction = ReconstructionTriple::default();
    for party in 0..3 {
        let mut owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        'scan: for (m, x) in members.iter().enumerate() {
            for r in 0..s.randomness().len() {
                let view = s.view(party, s.shares(m, r));
                match owner.get(&view) {
                    Some(&prev) if members[prev].coord(party) != x.coord(party) => {
                        correct[party] = false;
                        counterexample.get_or_insert(Counterexample {
                            party,
                            kind: ViolationKind::Correctness,
                            x: members[prev],
                            x_prime: *x,
                            view,
                        });
                        break 'scan;
                    }
                    Some(_) => {}
                    None => {
                        owner.insert(view, m);
                    }
                }
            }
        }
        reconstruction.maps[party] = owner.into_iter().map(|(v, m)| (v, members[m].coord(party))).collect();
    }
    CorrectnessReport { correct, counterexample, reconstruction }
}

/// Exact conditional distribution of party `party`'s view given member `m`.
fn view_distribution(s: &Scheme, party: usize, m: usize) -> BTreeMap<(usize, usize), Exact> {
    let mut dist: BTreeMap<(usize, usize), Exact> = BTreeMap::new();
    for (r, (_, p)) in s.randomness().iter().enumerate() {
        let slot = dist.entry(s.view(party, s.shares(m, r))).or_insert_with(Exact::zero);
        *slot += p;
    }
    dist
}

pub fn verify_privacy(s: &Scheme) -> PrivacyReport {
    let members = s.domain().members();
    let mut private = [true; 3];
    let mut counterexample = None;
    for party in 0..3 {
        let dists: Vec<_> = (0..members.len()).map(|m| view_distribution(s, party, m)).collect();
        let mut first_with: BTreeMap<usize, usize> = BTreeMap::new();
        for m in 0..members.len() {
            let anchor = *first_with.entry(members[m].coord(party)).or_insert(m);
            if dists[anchor] == dists[m] {
                continue;
            }
            private[party] = false;
            let view = dists[anchor]
                .keys()
                .chain(dists[m].keys())
                .find(|v| dists[anchor].get(v) != dists[m].get(v))
                .copied()
                .expect("distributions differ somewhere");
            counterexample.get_or_insert(Counterexample {
                party,
                kind: ViolationKind::Privacy,
                x: members[anchor],
                x_prime: members[m],
                view,
            });
            break;
        }
    }
    PrivacyReport { private, counterexample }
}

pub fn verify(s: &Scheme) -> VerificationReport {
    let c = verify_correctness(s);
    let p = verify_privacy(s);
    VerificationReport { correct: c.correct, private: p.private, counterexample: c.counterexample.or(p.counterexample) }
}
