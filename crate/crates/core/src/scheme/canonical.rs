use super::{uniform_randomness, Scheme, SchemeError};
use crate::domain::{Domain, Secret};

/// Largest domain each of the five canonical schemes handles.
pub fn validity_domain(id: u8) -> Result<Domain, SchemeError> {
    let mask = match id {
        1 => 0xff,
        // x1 = 0
        2 => 0x0f,
        // even parity
        3 => 0b0110_1001,
        // x1 = x2
        4 => 0b1100_0011,
        // {000,001,010,100,111}
        5 => 0b1001_0111,
        _ => return Err(SchemeError::UnknownCanonical(id)),
    };
    Ok(Domain::from_mask(mask)?)
}

fn bits(n: usize, width: usize) -> Vec<String> {
    (0..1usize << width).map(|v| format!("{v:0width$b}")).take(n).collect()
}

fn bit(v: usize) -> String {
    v.to_string()
}

fn pair(a: usize, b: usize) -> String {
    format!("{a}{b}")
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// The published scheme `id` (1..=5), restricted to `domain`.
pub fn canonical_scheme(id: u8, domain: &Domain) -> Result<Scheme, SchemeError> {
    if !domain.is_subset_of(&validity_domain(id)?) {
        return Err(SchemeError::OutsideValidity { id });
    }
    canonical_rule(id, domain)
}

/// Applies the encoding rule of scheme `id` to any binary domain on which the
/// rule is defined, without checking validity. Schemes 1-4 are formulas over
/// the whole cube; scheme 5 is a table on its validity domain.
pub fn canonical_rule(id: u8, domain: &Domain) -> Result<Scheme, SchemeError> {
    let valid = validity_domain(id)?;
    if !domain.is_binary() || (id == 5 && !domain.is_subset_of(&valid)) {
        return Err(SchemeError::OutsideValidity { id });
    }
    let d = domain.clone();
    let s = match id {
        1 => Scheme::from_fn(d, uniform_randomness(bits(8, 3)), |x, r| {
            let [x1, x2, x3] = x.0;
            let (r1, r2, r3) = (r >> 2 & 1, r >> 1 & 1, r & 1);
            [pair(x1 ^ r1, r2), pair(x2 ^ r2, r3), pair(x3 ^ r3, r1)]
        }),
        2 => Scheme::from_fn(d, uniform_randomness(bits(4, 2)), |x, r| {
            let [_, x2, x3] = x.0;
            let (r2, r3) = (r >> 1 & 1, r & 1);
            [bit(x2 ^ r2), pair(r2, r3), bit(x3 ^ r3)]
        }),
        3 => Scheme::from_fn(d, uniform_randomness(bits(2, 1)), |x, r| {
            let [x1, x2, x3] = x.0;
            [bit(r ^ x1 ^ x2), bit(r ^ x2 ^ x3), bit(r ^ x3 ^ x1)]
        }),
        4 => Scheme::from_fn(d, uniform_randomness(bits(4, 2)), |x, r| {
            let [x1, _, x3] = x.0;
            let (ra, rb) = (r >> 1 & 1, r & 1);
            [bit(x1 ^ ra), pair(ra, x3 ^ rb), pair(ra, rb)]
        }),
        5 => {
            let names = PERMS.iter().map(|p| p.iter().map(|v| v.to_string()).collect()).collect();
            Scheme::from_fn(d, uniform_randomness(names), |x, r| {
                let [a, b, c] = PERMS[r];
                let w = match *x {
                    Secret([0, 0, 0]) => [a, b, c],
                    Secret([1, 1, 1]) => [a, a, a],
                    Secret([1, 0, 0]) => [a, b, a],
                    Secret([0, 1, 0]) => [a, a, b],
                    Secret([0, 0, 1]) => [b, a, a],
                    _ => unreachable!("outside the validity domain"),
                };
                w.map(|v| v.to_string())
            })
        }
        _ => unreachable!(),
    }?;
    Ok(s)
}
