//! Secret domains over three coordinates, the 48-element symmetry group of the
//! binary cube, and the orbit classification of binary domains.

mod family;
mod format;
mod transform;

use std::fmt;

use thiserror::Error;

pub use family::{classify_all, family_by_id, family_of_mask, FamilyRecord};
pub use format::parse_domain;
pub use transform::{apply_transform, canonicalize, transform_mask, transform_witness, Transform};

/// A secret triple, stored as symbol indices into the per-coordinate alphabets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Secret(pub [usize; 3]);

impl Secret {
    /// The binary secret whose base-2 value (x1 most significant) is `bits`.
    pub fn from_bit_index(bits: u8) -> Self {
        let b = bits as usize;
        Secret([(b >> 2) & 1, (b >> 1) & 1, b & 1])
    }

    pub fn bit_index(&self) -> Option<u8> {
        if self.0.iter().all(|&c| c < 2) {
            Some((self.0[0] * 4 + self.0[1] * 2 + self.0[2]) as u8)
        } else {
            None
        }
    }

    pub fn coord(&self, i: usize) -> usize {
        self.0[i]
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomainError {
    #[error("domain has no members")]
    Empty,
    #[error("alphabet of coordinate {0} is empty or repeats a symbol")]
    BadAlphabet(usize),
    #[error("symbol index {index} is outside the alphabet of coordinate {coord}")]
    OutOfAlphabet { coord: usize, index: usize },
    #[error("secret {0} listed twice")]
    Duplicate(String),
    #[error("negation needs binary alphabets")]
    NonBinaryNegation,
    #[error("coordinate permutation needs equal alphabets")]
    UnequalAlphabets,
    #[error("{0:?} is not a permutation of the three coordinates")]
    BadPermutation([usize; 3]),
    #[error("{0} is not a member of the domain")]
    NotAMember(String),
    #[error("domain is not binary")]
    NotBinary,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A non-empty set of admissible secrets together with the coordinate alphabets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Domain {
    alphabets: [Vec<String>; 3],
    members: Vec<Secret>,
}

fn binary_alphabet() -> Vec<String> {
    vec!["0".to_string(), "1".to_string()]
}

impl Domain {
    pub fn new(alphabets: [Vec<String>; 3], members: Vec<Secret>) -> Result<Self, DomainError> {
        for (c, alpha) in alphabets.iter().enumerate() {
            let mut sorted = alpha.clone();
            sorted.sort();
            sorted.dedup();
            if alpha.is_empty() || sorted.len() != alpha.len() {
                return Err(DomainError::BadAlphabet(c));
            }
        }
        if members.is_empty() {
            return Err(DomainError::Empty);
        }
        for m in &members {
            for c in 0..3 {
                if m.0[c] >= alphabets[c].len() {
                    return Err(DomainError::OutOfAlphabet { coord: c, index: m.0[c] });
                }
            }
        }
        let mut members = members;
        members.sort();
        let dup = members.windows(2).find(|w| w[0] == w[1]).map(|w| w[0]);
        let domain = Domain { alphabets, members };
        if let Some(d) = dup {
            return Err(DomainError::Duplicate(domain.format_secret(&d)));
        }
        Ok(domain)
    }

    /// Binary domain from an 8-bit mask (bit `b` set iff the secret with base-2 value `b` is a member).
    pub fn from_mask(mask: u8) -> Result<Self, DomainError> {
        let members = (0..8u8)
            .filter(|b| mask >> b & 1 == 1)
            .map(Secret::from_bit_index)
            .collect();
        Domain::new([binary_alphabet(), binary_alphabet(), binary_alphabet()], members)
    }

    /// Binary domain from bitstrings such as `"010"`.
    pub fn from_bitstrings(bits: &[&str]) -> Result<Self, DomainError> {
        let mut mask = 0u8;
        for (i, s) in bits.iter().enumerate() {
            let b = parse_bitstring(s).ok_or_else(|| DomainError::Parse {
                line: i + 1,
                msg: format!("`{s}` is not a 3-bit string"),
            })?;
            if mask >> b & 1 == 1 {
                return Err(DomainError::Duplicate(s.to_string()));
            }
            mask |= 1 << b;
        }
        Domain::from_mask(mask)
    }

    pub fn full_cube() -> Self {
        Domain::from_mask(0xff).expect("non-empty")
    }

    pub fn alphabets(&self) -> &[Vec<String>; 3] {
        &self.alphabets
    }

    pub fn members(&self) -> &[Secret] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &Secret) -> bool {
        self.members.binary_search(x).is_ok()
    }

    pub fn index_of(&self, x: &Secret) -> Option<usize> {
        self.members.binary_search(x).ok()
    }

    pub fn is_binary(&self) -> bool {
        self.alphabets.iter().all(|a| *a == binary_alphabet())
    }

    pub fn binary_mask(&self) -> Option<u8> {
        if !self.is_binary() {
            return None;
        }
        Some(self.members.iter().fold(0u8, |m, x| m | 1 << x.bit_index().expect("binary")))
    }

    pub fn symbol(&self, coord: usize, index: usize) -> &str {
        &self.alphabets[coord][index]
    }

    /// Looks up a secret by its coordinate symbols.
    pub fn secret_from_symbols(&self, symbols: [&str; 3]) -> Option<Secret> {
        let mut idx = [0usize; 3];
        for c in 0..3 {
            idx[c] = self.alphabets[c].iter().position(|s| s == symbols[c])?;
        }
        Some(Secret(idx))
    }

    /// Bare bitstring for binary domains, comma-separated symbols otherwise.
    pub fn format_secret(&self, x: &Secret) -> String {
        let syms: Vec<&str> = (0..3).map(|c| self.symbol(c, x.0[c])).collect();
        if self.is_binary() {
            syms.concat()
        } else {
            syms.join(",")
        }
    }

    /// Same alphabets and every member of `self` belongs to `other`.
    pub fn is_subset_of(&self, other: &Domain) -> bool {
        self.alphabets == other.alphabets && self.members.iter().all(|m| other.contains(m))
    }

    /// The subdomain formed by the listed members (which must belong to `self`).
    pub fn restrict(&self, members: impl IntoIterator<Item = Secret>) -> Result<Domain, DomainError> {
        let members: Vec<Secret> = members.into_iter().collect();
        if let Some(m) = members.iter().find(|m| !self.contains(m)) {
            return Err(DomainError::NotAMember(self.format_secret(m)));
        }
        Domain::new(self.alphabets.clone(), members)
    }

    /// All non-empty subdomains of a binary domain, by increasing mask.
    pub fn binary_subdomains(&self) -> Result<Vec<Domain>, DomainError> {
        let mask = self.binary_mask().ok_or(DomainError::NotBinary)?;
        Ok((1..=255u8)
            .filter(|s| s & !mask == 0)
            .map(|s| Domain::from_mask(s).expect("non-empty"))
            .collect())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for m in &self.members {
            out.push_str(&self.format_secret(m));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|m| self.format_secret(m)).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub(crate) fn parse_bitstring(s: &str) -> Option<u8> {
    let s = s.trim();
    if s.len() != 3 || !s.chars().all(|c| c == '0' || c == '1') {
        return None;
    }
    u8::from_str_radix(s, 2).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_round_trip() {
        for mask in 1..=255u8 {
            let d = Domain::from_mask(mask).unwrap();
            assert_eq!(d.binary_mask(), Some(mask));
            assert_eq!(d.len(), mask.count_ones() as usize);
        }
        assert_eq!(Domain::from_mask(0), Err(DomainError::Empty));
    }

    #[test]
    fn bitstrings_and_display() {
        let d = Domain::from_bitstrings(&["011", "000"]).unwrap();
        assert_eq!(d.binary_mask(), Some(0b1001));
        assert_eq!(d.to_string(), "{000,011}");
        assert!(Domain::from_bitstrings(&["000", "000"]).is_err());
    }

    #[test]
    fn rejects_bad_members() {
        let a = binary_alphabet();
        let err = Domain::new([a.clone(), a.clone(), a], vec![Secret([0, 2, 0])]);
        assert_eq!(err, Err(DomainError::OutOfAlphabet { coord: 1, index: 2 }));
    }

    #[test]
    fn subdomains_of_face() {
        let face = Domain::from_bitstrings(&["000", "001", "010", "011"]).unwrap();
        let subs = face.binary_subdomains().unwrap();
        assert_eq!(subs.len(), 15);
        assert!(subs.iter().all(|s| s.is_subset_of(&face)));
    }
}
