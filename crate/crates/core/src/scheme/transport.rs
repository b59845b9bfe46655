use super::{Edge, Scheme, SchemeError};
use crate::domain::{apply_transform, Transform};

/// Relabels a scheme along a domain symmetry. The new party `j` plays the
/// old party `p[j]`, so each new share is the old share between the
/// corresponding old parties; negations only change how secrets are decoded.
pub fn transport_scheme(s: &Scheme, t: &Transform) -> Result<Scheme, SchemeError> {
    let domain = apply_transform(s.domain(), t)?;
    let p = t.permutation();
    let old_edge: [usize; 3] = Edge::ALL.map(|e| {
        let (a, b) = e.parties();
        Edge::between(p[a], p[b]).index()
    });
    let inv = t.inverse();
    let share_alphabets = old_edge.map(|o| s.share_alphabets()[o].clone());
    let encoder = domain
        .members()
        .iter()
        .map(|y| {
            let m = s.domain().index_of(&inv.apply_point(*y)).expect("image of a member");
            (0..s.randomness().len())
                .map(|r| {
                    let w = s.shares(m, r);
                    old_edge.map(|o| w[o])
                })
                .collect()
        })
        .collect();
    Scheme::new(domain, s.randomness().to_vec(), share_alphabets, encoder)
}
