use super::{uniform_randomness, Edge, Scheme, SchemeError};
use crate::domain::Domain;

/// Builds the scheme that sends every additive coordinate `i` as a fresh
/// one-bit pair (`R` on the share between parties `i` and `i+1`, `x_i ⊕ R`
/// on the share between `i-1` and `i`) and writes every clear coordinate
/// verbatim on its planned shares. Shares carrying nothing hold `-`.
///
/// The result is not verified.
pub fn reduced_scheme(domain: &Domain, clear: &[Vec<Edge>; 3], additive: [bool; 3]) -> Result<Scheme, SchemeError> {
    for i in 0..3 {
        if let Some(e) = clear[i].iter().find(|e| !e.touches(i)) {
            return Err(SchemeError::MalformedPlan(format!("x{} cannot travel on {}", i + 1, e.name())));
        }
        if additive[i] && !clear[i].is_empty() {
            return Err(SchemeError::MalformedPlan(format!("x{} is both clear and additive", i + 1)));
        }
        if additive[i] && domain.alphabets()[i].len() != 2 {
            return Err(SchemeError::MalformedPlan(format!("additive x{} needs a binary alphabet", i + 1)));
        }
    }
    let coins: Vec<usize> = (0..3).filter(|&i| additive[i]).collect();
    let width = coins.len();
    let names: Vec<String> = if width == 0 {
        vec!["-".to_string()]
    } else {
        (0..1usize << width).map(|v| format!("{v:0width$b}")).collect()
    };
    let single_char = domain.alphabets().iter().flatten().all(|s| s.chars().count() == 1);
    let sep = if single_char { "" } else { "." };
    Scheme::from_fn(domain.clone(), uniform_randomness(names), |x, r| {
        let coin = |i: usize| {
            let k = coins.iter().position(|&c| c == i).expect("additive coordinate");
            r >> (width - 1 - k) & 1
        };
        Edge::ALL.map(|e| {
            let mut parts: Vec<String> = Vec::new();
            for i in 0..3 {
                if clear[i].contains(&e) {
                    parts.push(domain.symbol(i, x.coord(i)).to_string());
                }
                if additive[i] {
                    if e == Edge::between(i, (i + 1) % 3) {
                        parts.push(coin(i).to_string());
                    } else if e == Edge::between(i, (i + 2) % 3) {
                        parts.push((x.coord(i) ^ coin(i)).to_string());
                    }
                }
            }
            if parts.is_empty() {
                "-".to_string()
            } else {
                parts.join(sep)
            }
        })
    })
}
