use super::{Domain, DomainError, Secret};

/// A coordinate negation pattern followed by a coordinate permutation.
///
/// The image of `x` has `y[j] = x[p[j]]`, with the source coordinate `p[j]`
/// flipped when `negations[p[j]]` is set. Negations are indexed by source
/// coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transform {
    negations: [bool; 3],
    permutation: [usize; 3],
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

impl Transform {
    pub const IDENTITY: Transform = Transform { negations: [false; 3], permutation: [0, 1, 2] };

    pub fn new(negations: [bool; 3], permutation: [usize; 3]) -> Result<Self, DomainError> {
        let mut seen = [false; 3];
        for &p in &permutation {
            if p >= 3 || seen[p] {
                return Err(DomainError::BadPermutation(permutation));
            }
            seen[p] = true;
        }
        Ok(Transform { negations, permutation })
    }

    pub fn negate(coord: usize) -> Self {
        let mut negations = [false; 3];
        negations[coord] = true;
        Transform { negations, permutation: [0, 1, 2] }
    }

    pub fn swap(i: usize, j: usize) -> Self {
        let mut permutation = [0, 1, 2];
        permutation.swap(i, j);
        Transform { negations: [false; 3], permutation }
    }

    pub fn permute(permutation: [usize; 3]) -> Result<Self, DomainError> {
        Transform::new([false; 3], permutation)
    }

    /// All 48 transforms, permutation-major starting from the identity permutation.
    pub fn all() -> impl Iterator<Item = Transform> {
        PERMUTATIONS.into_iter().flat_map(|permutation| {
            (0..8u8).map(move |n| Transform {
                negations: [n & 4 != 0, n & 2 != 0, n & 1 != 0],
                permutation,
            })
        })
    }

    pub fn negations(&self) -> [bool; 3] {
        self.negations
    }

    pub fn permutation(&self) -> [usize; 3] {
        self.permutation
    }

    pub fn is_identity(&self) -> bool {
        *self == Transform::IDENTITY
    }

    pub fn has_negation(&self) -> bool {
        self.negations.iter().any(|&n| n)
    }

    pub fn apply_point(&self, x: Secret) -> Secret {
        let mut y = [0usize; 3];
        for (j, out) in y.iter_mut().enumerate() {
            let src = self.permutation[j];
            *out = if self.negations[src] { x.0[src] ^ 1 } else { x.0[src] };
        }
        Secret(y)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Transform) -> Transform {
        let inv = invert_perm(other.permutation);
        let mut permutation = [0usize; 3];
        let mut negations = [false; 3];
        for j in 0..3 {
            permutation[j] = other.permutation[self.permutation[j]];
        }
        for i in 0..3 {
            negations[i] = other.negations[i] ^ self.negations[inv[i]];
        }
        Transform { negations, permutation }
    }

    pub fn inverse(&self) -> Transform {
        let permutation = invert_perm(self.permutation);
        let mut negations = [false; 3];
        for k in 0..3 {
            negations[k] = self.negations[self.permutation[k]];
        }
        Transform { negations, permutation }
    }
}

impl std::fmt::Display for Transform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let neg: String = self.negations.iter().map(|&n| if n { '1' } else { '0' }).collect();
        let perm: String = self.permutation.iter().map(|p| char::from(b'1' + *p as u8)).collect();
        write!(f, "negate={neg} perm={perm}")
    }
}

fn invert_perm(p: [usize; 3]) -> [usize; 3] {
    let mut inv = [0usize; 3];
    for (j, &pj) in p.iter().enumerate() {
        inv[pj] = j;
    }
    inv
}

pub fn apply_transform(domain: &Domain, t: &Transform) -> Result<Domain, DomainError> {
    let alphabets = domain.alphabets();
    if t.has_negation() && !domain.is_binary() {
        return Err(DomainError::NonBinaryNegation);
    }
    if t.permutation != [0, 1, 2] && !(alphabets[0] == alphabets[1] && alphabets[1] == alphabets[2]) {
        return Err(DomainError::UnequalAlphabets);
    }
    let new_alphabets = [0, 1, 2].map(|j| alphabets[t.permutation[j]].clone());
    let members = domain.members().iter().map(|&x| t.apply_point(x)).collect();
    Domain::new(new_alphabets, members)
}

/// Image of a binary mask under `t`.
pub fn transform_mask(mask: u8, t: &Transform) -> u8 {
    (0..8u8)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| t.apply_point(Secret::from_bit_index(b)).bit_index().expect("binary"))
        .fold(0u8, |m, b| m | 1 << b)
}

/// Minimum mask over the orbit of a binary domain.
pub fn canonicalize(domain: &Domain) -> Result<u8, DomainError> {
    let mask = domain.binary_mask().ok_or(DomainError::NotBinary)?;
    Ok(canonical_mask(mask))
}

pub(crate) fn canonical_mask(mask: u8) -> u8 {
    Transform::all().map(|t| transform_mask(mask, &t)).min().expect("48 transforms")
}

/// First transform (in `Transform::all` order) carrying `a` onto `b`.
pub fn transform_witness(a: &Domain, b: &Domain) -> Option<Transform> {
    let (ma, mb) = (a.binary_mask()?, b.binary_mask()?);
    Transform::all().find(|t| transform_mask(ma, t) == mb)
}
