use std::sync::OnceLock;

use super::{binary_triple, BoundError, BoundSpec, EpsilonFamily, PresetSource};
use crate::domain::{family_by_id, family_of_mask, Domain, DomainError};
use crate::info::{ratio, Exact};

/// What the lower-bound side of the table offers for a family.
#[derive(Clone, Debug, PartialEq)]
pub enum Preset {
    Distributions(EpsilonFamily),
    /// No distributional preset; the family's bound comes from the support certifier.
    Combinatorial,
}

type Masses = &'static [(&'static str, (i64, i64))];

/// Limiting distributions (outer, then the two inner ones) shared by a group
/// of families.
fn group_masses(id: u8) -> Option<[Masses; 3]> {
    const HALF: (i64, i64) = (1, 2);
    const THIRD: (i64, i64) = (1, 3);
    const QUARTER: (i64, i64) = (1, 4);
    const LOW_HALF: Masses = &[("000", HALF), ("001", HALF)];
    Some(match id {
        4..=6 => [LOW_HALF, LOW_HALF, LOW_HALF],
        7 | 8 => {
            const P: Masses = &[("000", HALF), ("011", HALF)];
            [P, P, P]
        }
        9 | 10 => [LOW_HALF, &[("000", HALF), ("100", HALF)], LOW_HALF],
        12 => [
            &[("000", THIRD), ("001", THIRD), ("010", THIRD)],
            &[("000", THIRD), ("010", THIRD), ("100", THIRD)],
            LOW_HALF,
        ],
        15 | 16 => [
            &[("000", HALF), ("010", HALF)],
            &[("000", QUARTER), ("100", QUARTER), ("010", QUARTER), ("110", QUARTER)],
            LOW_HALF,
        ],
        17..=21 => [
            &[("000", HALF), ("010", HALF)],
            &[("001", QUARTER), ("010", QUARTER), ("101", QUARTER), ("110", QUARTER)],
            LOW_HALF,
        ],
        _ => return None,
    })
}

/// The member of each family on which its preset is stated.
fn preset_domain(id: u8) -> Option<&'static [&'static str]> {
    Some(match id {
        4 => &["000", "001"],
        5 => &["000", "001", "110"],
        6 => &["000", "001", "110", "111"],
        7 => &["000", "011", "101"],
        8 => &["000", "011", "101", "110"],
        9 => &["000", "001", "100"],
        10 => &["000", "001", "100", "101"],
        11 => &["000", "001", "010", "100"],
        12 => &["000", "001", "010", "100", "111"],
        15 => &["000", "001", "010", "100", "110"],
        16 => &["000", "001", "010", "011", "100", "110"],
        17 => &["000", "001", "010", "101", "110"],
        18 => &["000", "001", "010", "011", "101", "110"],
        19 => &["000", "001", "010", "101", "110", "111"],
        20 => &["000", "001", "010", "011", "100", "101", "110"],
        21 => &["000", "001", "010", "011", "100", "101", "110", "111"],
        _ => return None,
    })
}

fn exact(pairs: Masses) -> Vec<(&'static str, Exact)> {
    pairs.iter().map(|(bits, (n, d))| (*bits, ratio(*n, *d))).collect()
}

/// The path on {000,001,010,100} whose bound tends to log2(6):
/// outer `(1/3−ε, 1/3−ε, 1/3−ε, 3ε)`, first inner `(1/3−ε, 3ε, 1/3−ε, 1/3−ε)`,
/// second inner `(1/2−2ε, 1/2−2ε, ε, 3ε)`, for `ε ≤ 1/8`.
pub fn corner_family() -> EpsilonFamily {
    let domain = Domain::from_bitstrings(&["000", "001", "010", "100"]).expect("valid domain");
    let r = ratio;
    let base = [
        vec![r(1, 3), r(1, 3), r(1, 3), r(0, 1)],
        vec![r(1, 3), r(0, 1), r(1, 3), r(1, 3)],
        vec![r(1, 2), r(1, 2), r(0, 1), r(0, 1)],
    ];
    let direction = [
        vec![r(-1, 1), r(-1, 1), r(-1, 1), r(3, 1)],
        vec![r(-1, 1), r(3, 1), r(-1, 1), r(-1, 1)],
        vec![r(-2, 1), r(-2, 1), r(1, 1), r(3, 1)],
    ];
    EpsilonFamily::explicit(domain, BoundSpec::LB2, base, direction, r(1, 8), PresetSource::TableII)
        .expect("corner path satisfies its constraints")
}

/// The ε-perturbed optimizing distributions for a family, the combinatorial
/// marker for families 13 and 14, and point masses for families 1 to 3.
pub fn preset_table2(family_id: u8) -> Result<Preset, BoundError> {
    match family_id {
        13 | 14 => Ok(Preset::Combinatorial),
        11 => Ok(Preset::Distributions(corner_family())),
        1..=3 => {
            let family = family_by_id(family_id).ok_or(BoundError::UnknownFamily(family_id))?;
            let domain = family.representative.clone();
            let mut point = vec![ratio(0, 1); domain.len()];
            point[0] = ratio(1, 1);
            let base = [point.clone(), point.clone(), point];
            let fam = EpsilonFamily::from_limits(domain, BoundSpec::LB2, base, PresetSource::Derived)?;
            Ok(Preset::Distributions(fam))
        }
        _ => {
            let (Some(masses), Some(bits)) = (group_masses(family_id), preset_domain(family_id)) else {
                return Err(BoundError::UnknownFamily(family_id));
            };
            let domain = Domain::from_bitstrings(bits).map_err(domain_error)?;
            let owned = masses.map(exact);
            let triple = binary_triple(&domain, owned.each_ref().map(Vec::as_slice))?;
            let to_vec = |q: &crate::info::JointPmf<Exact>| -> Vec<Exact> {
                domain.members().iter().map(|x| q.weight(&x.0)).collect()
            };
            let base = [to_vec(&triple.p), to_vec(&triple.p_prime), to_vec(&triple.p_double)];
            let fam = EpsilonFamily::from_limits(domain.clone(), BoundSpec::LB2, base, PresetSource::TableII)?;
            Ok(Preset::Distributions(fam))
        }
    }
}

fn domain_error(e: DomainError) -> BoundError {
    BoundError::Construction(e.to_string())
}

/// Limit of the family's preset path, or `None` for combinatorial families.
pub fn preset_limit(family_id: u8) -> Option<f64> {
    static LIMITS: OnceLock<Vec<Option<f64>>> = OnceLock::new();
    let limits = LIMITS.get_or_init(|| {
        (1..=21u8)
            .map(|id| match preset_table2(id) {
                Ok(Preset::Distributions(fam)) => fam.limit().ok(),
                _ => None,
            })
            .collect()
    });
    limits.get(usize::from(family_id).checked_sub(1)?).copied().flatten()
}

/// Largest preset limit over the families of all subsets of a binary domain.
/// A bound for a subset is a bound for the domain itself.
pub fn best_bound_over_supersets(domain: &Domain) -> Result<f64, BoundError> {
    let mask = domain.binary_mask().ok_or_else(|| domain_error(DomainError::NotBinary))?;
    Ok((1..=255u8)
        .filter(|s| s & !mask == 0)
        .filter_map(|s| family_of_mask(s).and_then(|f| preset_limit(f.id)))
        .fold(0.0, f64::max))
}
