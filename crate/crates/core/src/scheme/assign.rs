use std::fmt;

use super::{canonical_scheme, reduced_scheme, transport_scheme, validity_domain, verify, Edge, Scheme, SchemeError};
use crate::domain::{family_by_id, transform_mask, Domain, Transform};

/// A recipe producing a scheme for a given domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Canonical scheme `id` moved along `transform` and restricted.
    Canonical { id: u8, transform: Transform },
    /// A [`reduced_scheme`] plan.
    Reduced { clear: [Vec<Edge>; 3], additive: [bool; 3] },
}

impl Construction {
    pub fn build(&self, domain: &Domain) -> Result<Scheme, SchemeError> {
        match self {
            Construction::Canonical { id, transform } => {
                let base = canonical_scheme(*id, &validity_domain(*id)?)?;
                transport_scheme(&base, transform)?.restrict(domain)
            }
            Construction::Reduced { clear, additive } => reduced_scheme(domain, clear, *additive),
        }
    }

    /// Number of randomness values the construction uses.
    pub fn randomness_size(&self) -> u64 {
        match self {
            Construction::Canonical { id, .. } => [8, 4, 2, 4, 6][*id as usize - 1],
            Construction::Reduced { additive, .. } => 1 << additive.iter().filter(|&&a| a).count(),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Canonical { id, transform } if transform.is_identity() => write!(f, "scheme {id}"),
            Construction::Canonical { id, transform } => write!(f, "scheme {id} ({transform})"),
            Construction::Reduced { clear, additive } => {
                let mut parts = Vec::new();
                for i in 0..3 {
                    if additive[i] {
                        parts.push(format!("x{} additive", i + 1));
                    }
                    if !clear[i].is_empty() {
                        let edges: Vec<&str> = clear[i].iter().map(|e| e.name()).collect();
                        parts.push(format!("x{} clear on {}", i + 1, edges.join("+")));
                    }
                }
                if parts.is_empty() {
                    write!(f, "constant")
                } else {
                    write!(f, "reduced: {}", parts.join(", "))
                }
            }
        }
    }
}

fn coordinate_options(i: usize) -> Vec<(Vec<Edge>, bool)> {
    let adjacent: Vec<Edge> = Edge::ALL.into_iter().filter(|e| e.touches(i)).collect();
    vec![
        (vec![], false),
        (vec![adjacent[0]], false),
        (vec![adjacent[1]], false),
        (adjacent.clone(), false),
        (vec![], true),
    ]
}

/// Every candidate construction applicable to a binary domain, cheapest
/// first; canonical schemes precede reduced plans of the same cost.
fn candidates(domain: &Domain) -> Vec<Construction> {
    let mut out = Vec::new();
    let mask = domain.binary_mask().unwrap_or(0);
    for id in 1..=5u8 {
        let valid = validity_domain(id).expect("known id").binary_mask().expect("binary");
        for t in Transform::all() {
            if mask & !transform_mask(valid, &t) == 0 {
                out.push(Construction::Canonical { id, transform: t });
            }
        }
    }
    for (c0, a0) in coordinate_options(0) {
        for (c1, a1) in coordinate_options(1) {
            for (c2, a2) in coordinate_options(2) {
                out.push(Construction::Reduced { clear: [c0.clone(), c1.clone(), c2.clone()], additive: [a0, a1, a2] });
            }
        }
    }
    out.sort_by_key(Construction::randomness_size);
    out
}

/// The first verified construction with the fewest randomness values among
/// transported canonical schemes and reduced plans.
pub fn search_scheme(domain: &Domain) -> Option<(Construction, Scheme)> {
    candidates(domain).into_iter().find_map(|c| {
        let s = c.build(domain).ok()?;
        verify(&s).passed().then_some((c, s))
    })
}

fn reduced(clear: [&[Edge]; 3], additive: [bool; 3]) -> Construction {
    Construction::Reduced { clear: clear.map(|c| c.to_vec()), additive }
}

fn canonical(id: u8, negations: [bool; 3], permutation: [usize; 3]) -> Construction {
    Construction::Canonical { id, transform: Transform::new(negations, permutation).expect("valid transform") }
}

/// The construction used for each family's representative, as found by
/// [`search_scheme`] and checked against it in the tests.
pub fn frozen_assignments() -> Vec<(u8, Construction)> {
    use Edge::*;
    const F: bool = false;
    const T: bool = true;
    const NONE: [bool; 3] = [F, F, F];
    vec![
        (1, reduced([&[], &[], &[]], NONE)),
        (2, reduced([&[], &[], &[W23]], NONE)),
        (3, reduced([&[], &[], &[W23, W31]], NONE)),
        (4, reduced([&[], &[], &[]], [F, F, T])),
        (5, reduced([&[], &[], &[W23]], [T, F, F])),
        (6, reduced([&[], &[W12], &[]], [F, F, T])),
        (7, canonical(3, [F, F, T], [0, 1, 2])),
        (8, canonical(3, NONE, [0, 1, 2])),
        (9, canonical(2, NONE, [0, 1, 2])),
        (10, canonical(2, NONE, [0, 1, 2])),
        (11, canonical(5, NONE, [0, 1, 2])),
        (12, canonical(5, [F, F, T], [0, 1, 2])),
        (13, canonical(5, [F, T, T], [0, 1, 2])),
        (14, canonical(1, NONE, [0, 1, 2])),
        (15, canonical(1, NONE, [0, 1, 2])),
        (16, canonical(1, NONE, [0, 1, 2])),
        (17, canonical(1, NONE, [0, 1, 2])),
        (18, canonical(1, NONE, [0, 1, 2])),
        (19, canonical(1, NONE, [0, 1, 2])),
        (20, canonical(1, NONE, [0, 1, 2])),
        (21, canonical(1, NONE, [0, 1, 2])),
    ]
}

/// Verified scheme for the representative of family `family_id`.
pub fn assigned_scheme(family_id: u8) -> Result<(Construction, Scheme), SchemeError> {
    let family = family_by_id(family_id).ok_or(SchemeError::UnknownFamily(family_id))?;
    let (_, construction) = frozen_assignments()
        .into_iter()
        .find(|(f, _)| *f == family_id)
        .ok_or(SchemeError::UnknownFamily(family_id))?;
    let s = construction.build(&family.representative)?;
    let report = verify(&s);
    if !report.passed() {
        let why = report.counterexample.map(|c| c.describe(&s)).unwrap_or_default();
        return Err(SchemeError::Unverified(why));
    }
    Ok((construction, s))
}
