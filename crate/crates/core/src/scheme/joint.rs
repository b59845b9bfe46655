use num::Zero;

use super::{Edge, Scheme, SchemeError};
use crate::domain::{Domain, Secret};
use crate::info::{Axis, Exact, JointPmf, Weight};

/// Axis positions of the shares in an induced joint (secrets occupy 0..3).
pub const SHARE_AXES: [usize; 3] = [3, 4, 5];

fn secret_axes(domain: &Domain) -> Vec<Axis> {
    (0..3).map(|c| Axis { name: format!("X{}", c + 1), alphabet: domain.alphabets()[c].clone() }).collect()
}

/// A pmf on axes X1, X2, X3 placing `weights[m]` on domain member `m`.
pub fn secret_pmf<W: Weight>(domain: &Domain, weights: &[W]) -> Result<JointPmf<W>, SchemeError> {
    if weights.len() != domain.len() {
        return Err(SchemeError::AxesMismatch);
    }
    let entries = domain.members().iter().zip(weights).map(|(x, w)| (x.0.to_vec(), w.clone()));
    Ok(JointPmf::new(secret_axes(domain), entries)?)
}

/// Joint law of (X1, X2, X3, W12, W23, W31) when secrets are drawn from `p`
/// and shares from the scheme.
pub fn induced_joint(s: &Scheme, p: &JointPmf<Exact>) -> Result<JointPmf<Exact>, SchemeError> {
    let d = s.domain();
    if p.axes().len() != 3 || (0..3).any(|c| p.axes()[c].alphabet != d.alphabets()[c]) {
        return Err(SchemeError::AxesMismatch);
    }
    let mut axes = p.axes().to_vec();
    for e in Edge::ALL {
        axes.push(Axis { name: e.name().to_string(), alphabet: s.share_alphabets()[e.index()].clone() });
    }
    let mut entries = Vec::new();
    for (o, px) in p.iter() {
        if px.is_zero() {
            continue;
        }
        let x = Secret([o[0], o[1], o[2]]);
        let m = d.index_of(&x).ok_or_else(|| SchemeError::MassOutsideDomain(d.format_secret(&x)))?;
        for (r, (_, pr)) in s.randomness().iter().enumerate() {
            let w = s.shares(m, r);
            let mut outcome = o.clone();
            outcome.extend_from_slice(&w);
            entries.push((outcome, px * pr));
        }
    }
    Ok(JointPmf::new(axes, entries)?)
}
