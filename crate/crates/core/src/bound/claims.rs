use super::BoundError;
use crate::info::{
    conditional_entropy, conditional_mutual_information, entropy, is_conditionally_independent, is_determined_by,
    residual_information, Exact, JointPmf, Weight,
};
use crate::scheme::{induced_joint, Scheme};

const TOLERANCE: f64 = 1e-9;

/// Axes of party `i`'s view in an induced joint.
const VIEWS: [[usize; 2]; 3] = [[3, 5], [4, 3], [5, 4]];

/// One checked relation `lhs ≥ rhs` (or `lhs = rhs` for the exact conditions).
#[derive(Clone, Debug, PartialEq)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

fn at_least(name: &str, lhs: f64, rhs: f64) -> InequalityCheck {
    InequalityCheck { name: name.to_string(), lhs, rhs, holds: lhs >= rhs - TOLERANCE }
}

/// Information relations every valid scheme satisfies on the joint law it
/// induces from the secret pmf `p`:
///
/// * randomness dominates the view entropies (two forms);
/// * each conditional mutual information between shares dominates a
///   residual information between secrets;
/// * the share opposite a party carries at least the other two secrets'
///   uncertainty given that party's secret;
/// * each view determines its secret and is independent of the other
///   secrets given it, checked exactly and in floating point.
pub fn information_inequalities(s: &Scheme, p: &JointPmf<Exact>) -> Result<Vec<InequalityCheck>, BoundError> {
    let j = induced_joint(s, p)?;
    let (w12, w23, w31) = (3, 4, 5);
    let rho = s.randomness_size().value();
    let h_x1 = entropy(&j, &[0])?;
    let mut out = vec![
        at_least(
            "rho >= H(W12|W23) + H(W31|W12) - H(X1)",
            rho,
            conditional_entropy(&j, &[w12], &[w23])? + conditional_entropy(&j, &[w31], &[w12])? - h_x1,
        ),
        at_least(
            "rho >= H(W12|W31) + H(W31|W12) - H(X1)",
            rho,
            conditional_entropy(&j, &[w12], &[w31])? + conditional_entropy(&j, &[w31], &[w12])? - h_x1,
        ),
    ];
    for (name, (a, b, given), (x, y)) in [
        ("I(W12;W23|W31) >= RI(X1;X3)", (w12, w23, w31), (0, 2)),
        ("I(W31;W23|W12) >= RI(X1;X2)", (w31, w23, w12), (0, 1)),
        ("I(W12;W31|W23) >= RI(X2;X3)", (w12, w31, w23), (1, 2)),
    ] {
        let lhs = conditional_mutual_information(&j, &[a], &[b], &[given])?;
        out.push(at_least(name, lhs, residual_information(&j, &[x], &[y])?));
    }
    for (name, opposite, view, (others, own)) in [
        ("H(W23|W12,W31) >= H(X2,X3|X1)", w23, [w12, w31], ([1, 2], 0)),
        ("H(W31|W12,W23) >= H(X3,X1|X2)", w31, [w12, w23], ([2, 0], 1)),
        ("H(W12|W31,W23) >= H(X1,X2|X3)", w12, [w31, w23], ([0, 1], 2)),
    ] {
        let lhs = conditional_entropy(&j, &[opposite], &view)?;
        out.push(at_least(name, lhs, conditional_entropy(&j, &others, &[own])?));
    }
    for i in 0..3 {
        let view = &VIEWS[i];
        let others: Vec<usize> = (0..3).filter(|&c| c != i).collect();
        let h = conditional_entropy(&j, &[i], view)?;
        let exact = is_determined_by(&j, &[i], view)?;
        out.push(InequalityCheck {
            name: format!("H(X{}|V{}) = 0", i + 1, i + 1),
            lhs: h,
            rhs: 0.0,
            holds: exact && h.abs() < TOLERANCE,
        });
        let leak = conditional_mutual_information(&j, view, &others, &[i])?;
        let exact = is_conditionally_independent(&j, view, &others, &[i])?;
        out.push(InequalityCheck {
            name: format!("I(V{};other secrets|X{}) = 0", i + 1, i + 1),
            lhs: leak,
            rhs: 0.0,
            holds: exact && leak.abs() < TOLERANCE,
        });
    }
    Ok(out)
}

/// Whether party 1's view has the same law under `p` and `p_prime`, two
/// secret pmfs with the same first margin (compared exactly).
pub fn view_margin_invariant(s: &Scheme, p: &JointPmf<Exact>, p_prime: &JointPmf<Exact>) -> Result<bool, BoundError> {
    let (a, b) = (p.marginal_masses(&[0]), p_prime.marginal_masses(&[0]));
    if let Some((k, w)) = a.iter().find(|(k, w)| !b.get(*k).is_some_and(|v| v == *w)) {
        return Err(BoundError::MarginViolation {
            which: "p_prime",
            axis: 1,
            symbol: s.domain().symbol(0, k[0]).to_string(),
            got: b.get(k).map(Weight::show).unwrap_or_else(|| "0".into()),
            want: w.show(),
        });
    }
    let view = |q: &JointPmf<Exact>| induced_joint(s, q).map(|j| j.marginal_masses(&VIEWS[0]));
    Ok(view(p)? == view(p_prime)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::ratio;
    use crate::scheme::{canonical_scheme, secret_pmf, validity_domain};

    #[test]
    fn scheme5_uniform() {
        let s = canonical_scheme(5, &validity_domain(5).unwrap()).unwrap();
        let n = s.domain().len() as i64;
        let p = secret_pmf(s.domain(), &vec![ratio(1, n); n as usize]).unwrap();
        let checks = information_inequalities(&s, &p).unwrap();
        assert_eq!(checks.len(), 14);
        for c in &checks {
            assert!(c.holds, "{} : {} vs {}", c.name, c.lhs, c.rhs);
        }
    }

    #[test]
    fn first_margin_preserved() {
        let s = canonical_scheme(2, &validity_domain(2).unwrap()).unwrap();
        // Members 000, 001, 010, 011: all share x1 = 0.
        let p = secret_pmf(s.domain(), &vec![ratio(1, 4); 4]).unwrap();
        let q = secret_pmf(s.domain(), &[ratio(1, 2), ratio(1, 6), ratio(1, 6), ratio(1, 6)]).unwrap();
        assert!(view_margin_invariant(&s, &p, &q).unwrap());
    }
}
