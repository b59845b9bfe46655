use std::sync::OnceLock;

use super::transform::{canonical_mask, transform_mask};
use super::{Domain, Transform};

/// One symmetry orbit of non-empty binary domains.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyRecord {
    pub id: u8,
    /// The orbit member with the smallest mask.
    pub representative: Domain,
    /// Sorted masks of every orbit member.
    pub member_masks: Vec<u8>,
    /// Randomness complexity in bits, when known.
    pub rho_bits: Option<f64>,
}

impl FamilyRecord {
    pub fn canonical_mask(&self) -> u8 {
        self.member_masks[0]
    }

    pub fn size(&self) -> usize {
        self.member_masks.len()
    }
}

/// Canonical mask to published family number.
const PUBLISHED_IDS: [(u8, u8); 21] = [
    (1, 1),
    (6, 2),
    (24, 3),
    (3, 4),
    (25, 5),
    (60, 6),
    (22, 7),
    (105, 8),
    (7, 9),
    (15, 10),
    (23, 11),
    (107, 12),
    (30, 13),
    (27, 14),
    (31, 15),
    (63, 16),
    (61, 17),
    (111, 18),
    (126, 19),
    (127, 20),
    (255, 21),
];

fn published_id(canonical: u8) -> u8 {
    PUBLISHED_IDS
        .iter()
        .find(|(m, _)| *m == canonical)
        .map(|(_, id)| *id)
        .expect("every orbit has a published id")
}

fn records() -> &'static [FamilyRecord] {
    static RECORDS: OnceLock<Vec<FamilyRecord>> = OnceLock::new();
    RECORDS.get_or_init(|| {
        let mut canon: Vec<u8> = (1..=255u8).map(canonical_mask).collect();
        canon.sort_by_key(|&m| (m.count_ones(), m));
        canon.dedup();
        let mut out: Vec<FamilyRecord> = canon
            .into_iter()
            .map(|c| {
                let mut member_masks: Vec<u8> = Transform::all().map(|t| transform_mask(c, &t)).collect();
                member_masks.sort();
                member_masks.dedup();
                FamilyRecord {
                    id: published_id(c),
                    representative: Domain::from_mask(c).expect("non-empty"),
                    member_masks,
                    rho_bits: None,
                }
            })
            .collect();
        out.sort_by_key(|r| r.id);
        out
    })
}

/// The 21 orbits of non-empty binary domains, ordered by family id.
pub fn classify_all() -> Vec<FamilyRecord> {
    records().to_vec()
}

pub fn family_by_id(id: u8) -> Option<&'static FamilyRecord> {
    records().iter().find(|r| r.id == id)
}

pub fn family_of_mask(mask: u8) -> Option<&'static FamilyRecord> {
    if mask == 0 {
        return None;
    }
    let c = canonical_mask(mask);
    records().iter().find(|r| r.canonical_mask() == c)
}
