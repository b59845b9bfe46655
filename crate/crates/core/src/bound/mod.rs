//! Information-theoretic lower bounds on randomness complexity, evaluated on
//! explicit triples of secret distributions, plus ε-paths approaching their
//! suprema and a heuristic optimizer.

mod claims;
mod epsilon;
mod optimize;
mod presets;

use std::fmt;

use thiserror::Error;

use crate::domain::{Domain, Secret};
use crate::info::{
    conditional_entropy, entropy, residual_information, residual_information_on_support, Axis, Exact, InfoError,
    JointPmf, Weight,
};
use crate::scheme::SchemeError;

pub use claims::{information_inequalities, view_margin_invariant, InequalityCheck};
pub use epsilon::{epsilon_sweep, EpsilonFamily, PresetSource, SweepReport, DEFAULT_SCHEDULE};
pub use optimize::{optimize_bound, OptimizeBudget};
pub use presets::{best_bound_over_supersets, corner_family, preset_limit, preset_table2, Preset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Inner distributions constrained on the second and first margins.
    Lb2,
    /// Both inner distributions constrained on the first margin.
    Lb1,
}

/// A bound variant together with a relabeling of the three coordinates:
/// coordinate `k` of the formula is coordinate `permutation[k]` of the domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundSpec {
    pub variant: Variant,
    pub permutation: [usize; 3],
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

impl BoundSpec {
    pub const LB2: BoundSpec = BoundSpec { variant: Variant::Lb2, permutation: [0, 1, 2] };
    pub const LB1: BoundSpec = BoundSpec { variant: Variant::Lb1, permutation: [0, 1, 2] };

    /// The 12 variant/permutation combinations.
    pub fn all() -> Vec<BoundSpec> {
        [Variant::Lb2, Variant::Lb1]
            .into_iter()
            .flat_map(|variant| PERMUTATIONS.into_iter().map(move |permutation| BoundSpec { variant, permutation }))
            .collect()
    }

    /// Domain coordinates on which `p_prime` and `p_double` must match `p`.
    pub fn constrained_axes(&self) -> (usize, usize) {
        let p = self.permutation;
        match self.variant {
            Variant::Lb2 => (p[1], p[0]),
            Variant::Lb1 => (p[0], p[0]),
        }
    }
}

impl fmt::Display for BoundSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.variant {
            Variant::Lb2 => "LB2",
            Variant::Lb1 => "LB1",
        };
        let perm: String = self.permutation.iter().map(|p| char::from(b'1' + *p as u8)).collect();
        write!(f, "{name}[{perm}]")
    }
}

impl std::str::FromStr for BoundSpec {
    type Err = BoundError;

    /// Parses `LB2`, `LB1[132]` and the like (case-insensitive variant).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BoundError::BadSpec(s.to_string());
        let (name, perm) = match s.split_once('[') {
            Some((name, rest)) => (name, rest.strip_suffix(']').ok_or_else(bad)?),
            None => (s, "123"),
        };
        let variant = match name.to_ascii_uppercase().as_str() {
            "LB2" => Variant::Lb2,
            "LB1" => Variant::Lb1,
            _ => return Err(bad()),
        };
        let digits: Vec<usize> = perm.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(bad)?;
        let permutation = PERMUTATIONS
            .into_iter()
            .find(|p| digits.len() == 3 && (0..3).all(|k| p[k] + 1 == digits[k]))
            .ok_or_else(bad)?;
        Ok(BoundSpec { variant, permutation })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundError {
    #[error(transparent)]
    Info(#[from] InfoError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("{which} has P(X{axis}={symbol}) = {got} but the outer distribution has {want}")]
    MarginViolation { which: &'static str, axis: usize, symbol: String, got: String, want: String },
    #[error("distribution puts mass on {0}, outside the domain")]
    OutsideDomain(String),
    #[error("distribution axes do not match the domain alphabets")]
    AxesMismatch,
    #[error("epsilon {eps} is outside (0, {max}]")]
    EpsilonOutOfRange { eps: String, max: String },
    #[error("epsilon schedule must be strictly decreasing")]
    ScheduleNotDecreasing,
    #[error("no preset for family {0}")]
    UnknownFamily(u8),
    #[error("{0}")]
    Construction(String),
    #[error("unrecognized bound `{0}` (expected LB1 or LB2, optionally with a permutation such as LB2[132])")]
    BadSpec(String),
}

/// Outer distribution `p` and inner distributions `p_prime`, `p_double`,
/// all supported within `domain`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistributionTriple<W> {
    pub domain: Domain,
    pub p: JointPmf<W>,
    pub p_prime: JointPmf<W>,
    pub p_double: JointPmf<W>,
}

pub(crate) fn secret_axes(domain: &Domain) -> Vec<Axis> {
    (0..3).map(|c| Axis { name: format!("X{}", c + 1), alphabet: domain.alphabets()[c].clone() }).collect()
}

fn check_within(domain: &Domain, p: &JointPmf<impl Weight>) -> Result<(), BoundError> {
    if p.axes().len() != 3 || (0..3).any(|c| p.axes()[c].alphabet != domain.alphabets()[c]) {
        return Err(BoundError::AxesMismatch);
    }
    for (o, w) in p.iter() {
        let x = Secret([o[0], o[1], o[2]]);
        if !w.is_zero() && !domain.contains(&x) {
            return Err(BoundError::OutsideDomain(format!("{x:?}")));
        }
    }
    Ok(())
}

impl<W: Weight> DistributionTriple<W> {
    pub fn new(domain: Domain, p: JointPmf<W>, p_prime: JointPmf<W>, p_double: JointPmf<W>) -> Result<Self, BoundError> {
        for q in [&p, &p_prime, &p_double] {
            check_within(&domain, q)?;
        }
        Ok(DistributionTriple { domain, p, p_prime, p_double })
    }

    /// Triple from per-member weight vectors, in domain member order.
    pub fn from_weights(domain: Domain, weights: [&[W]; 3]) -> Result<Self, BoundError> {
        let build = |w: &[W]| -> Result<JointPmf<W>, BoundError> {
            if w.len() != domain.len() {
                return Err(BoundError::AxesMismatch);
            }
            let entries = domain.members().iter().zip(w).map(|(x, w)| (x.0.to_vec(), w.clone()));
            Ok(JointPmf::new(secret_axes(&domain), entries)?)
        };
        let (p, pp, pd) = (build(weights[0])?, build(weights[1])?, build(weights[2])?);
        Ok(DistributionTriple { domain, p, p_prime: pp, p_double: pd })
    }

    /// Checks the margin constraints `spec` places on the inner distributions.
    pub fn check_constraints(&self, spec: &BoundSpec) -> Result<(), BoundError> {
        let (c1, c2) = spec.constrained_axes();
        for (which, q, c) in [("p_prime", &self.p_prime, c1), ("p_double", &self.p_double, c2)] {
            let want = self.p.marginal_masses(&[c]);
            let got = q.marginal_masses(&[c]);
            let keys: std::collections::BTreeSet<&Vec<usize>> = want.keys().chain(got.keys()).collect();
            let mismatch = keys.into_iter().find(|k| {
                let a = want.get(*k).cloned().unwrap_or_else(W::zero);
                let b = got.get(*k).cloned().unwrap_or_else(W::zero);
                !a.same(&b)
            });
            if let Some(k) = mismatch {
                let show = |m: &std::collections::BTreeMap<Vec<usize>, W>| m.get(k).cloned().unwrap_or_else(W::zero).show();
                return Err(BoundError::MarginViolation {
                    which,
                    axis: c + 1,
                    symbol: self.domain.symbol(c, k[0]).to_string(),
                    got: show(&got),
                    want: show(&want),
                });
            }
        }
        Ok(())
    }

    /// Independent two-fold product: every coordinate becomes a pair.
    pub fn tensor_square(&self) -> Result<DistributionTriple<W>, BoundError> {
        let square = |q: &JointPmf<W>| -> Result<JointPmf<W>, BoundError> {
            Ok(q.product(q).regroup(&[("X1", vec![0, 3]), ("X2", vec![1, 4]), ("X3", vec![2, 5])])?)
        };
        let p = square(&self.p)?;
        let alphabets: [Vec<String>; 3] = [0, 1, 2].map(|c| p.axes()[c].alphabet.clone());
        let n: [usize; 3] = [0, 1, 2].map(|c| self.domain.alphabets()[c].len());
        let members = self
            .domain
            .members()
            .iter()
            .flat_map(|x| self.domain.members().iter().map(move |y| Secret([0, 1, 2].map(|c| x.0[c] * n[c] + y.0[c]))))
            .collect();
        let domain = Domain::new(alphabets, members).map_err(SchemeError::from)?;
        DistributionTriple::new(domain, p, square(&self.p_prime)?, square(&self.p_double)?)
    }

    pub fn to_float(&self) -> DistributionTriple<f64> {
        DistributionTriple {
            domain: self.domain.clone(),
            p: self.p.to_float(),
            p_prime: self.p_prime.to_float(),
            p_double: self.p_double.to_float(),
        }
    }
}

/// Value of one bound instance and its parts:
/// `value = terms[0] + terms[1] + terms[2] + terms[3] − h_x1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundEvaluation {
    pub value: f64,
    /// Conditional entropy and residual information from `p_prime`, then from `p_double`.
    pub terms: [f64; 4],
    pub h_x1: f64,
    pub spec: BoundSpec,
}

/// Evaluates the bound `spec` on a triple satisfying its margin constraints.
pub fn evaluate_bound<W: Weight>(spec: &BoundSpec, triple: &DistributionTriple<W>) -> Result<BoundEvaluation, BoundError> {
    evaluate(spec, triple, false)
}

/// The value approached by full-support triples on `triple.domain` that
/// converge to `triple`: entropies at the limit, residual information with
/// the characteristic graphs of the whole domain.
pub fn evaluate_limit<W: Weight>(spec: &BoundSpec, triple: &DistributionTriple<W>) -> Result<BoundEvaluation, BoundError> {
    evaluate(spec, triple, true)
}

fn evaluate<W: Weight>(
    spec: &BoundSpec,
    triple: &DistributionTriple<W>,
    domain_graph: bool,
) -> Result<BoundEvaluation, BoundError> {
    triple.check_constraints(spec)?;
    let perm = spec.permutation;
    let q = triple.p.marginal(&perm)?;
    let q1 = triple.p_prime.marginal(&perm)?;
    let q2 = triple.p_double.marginal(&perm)?;
    let support: Vec<Vec<usize>> = triple.domain.members().iter().map(|x| perm.iter().map(|&c| x.0[c]).collect()).collect();
    let ri = |p: &JointPmf<W>, a: usize, b: usize| -> Result<f64, InfoError> {
        if domain_graph {
            residual_information_on_support(p, &[a], &[b], &support)
        } else {
            residual_information(p, &[a], &[b])
        }
    };
    let t1 = conditional_entropy(&q1, &[0, 1], &[2])?;
    let t2 = match spec.variant {
        Variant::Lb2 => ri(&q1, 1, 2)?,
        Variant::Lb1 => ri(&q1, 0, 2)?,
    };
    let t3 = conditional_entropy(&q2, &[0, 2], &[1])?;
    let t4 = ri(&q2, 0, 1)?;
    let h_x1 = entropy(&q, &[0])?;
    Ok(BoundEvaluation { value: t1 + t2 + t3 + t4 - h_x1, terms: [t1, t2, t3, t4], h_x1, spec: *spec })
}

/// Exact triple from bitstring-keyed masses on a binary domain.
pub(crate) fn binary_triple(domain: &Domain, masses: [&[(&str, Exact)]; 3]) -> Result<DistributionTriple<Exact>, BoundError> {
    let weights = masses.map(|list| {
        let mut w = vec![Exact::from_integer(0.into()); domain.len()];
        for (bits, m) in list {
            let x = Secret::from_bit_index(u8::from_str_radix(bits, 2).expect("bitstring"));
            if let Some(i) = domain.index_of(&x) {
                w[i] = m.clone();
            }
        }
        w
    });
    DistributionTriple::from_weights(domain.clone(), [&weights[0], &weights[1], &weights[2]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::{binary_entropy, ratio};

    #[test]
    fn twelve_specs() {
        let all = BoundSpec::all();
        assert_eq!(all.len(), 12);
        let set: std::collections::BTreeSet<_> = all.iter().collect();
        assert_eq!(set.len(), 12);
        assert_eq!(BoundSpec::LB2.to_string(), "LB2[123]");
        for spec in &all {
            assert_eq!(spec.to_string().parse::<BoundSpec>().unwrap(), *spec);
        }
        assert_eq!("lb1".parse::<BoundSpec>().unwrap(), BoundSpec::LB1);
        assert!("LB2[112]".parse::<BoundSpec>().is_err());
    }

    #[test]
    fn family4_uniform_third_coordinate() {
        let d = Domain::from_bitstrings(&["000", "001"]).unwrap();
        let half = [ratio(1, 2), ratio(1, 2)];
        let t = DistributionTriple::from_weights(d, [&half, &half, &half]).unwrap();
        let e = evaluate_bound(&BoundSpec::LB2, &t).unwrap();
        assert!((e.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn point_masses_give_zero() {
        let d = Domain::from_bitstrings(&["010"]).unwrap();
        let one = [ratio(1, 1)];
        let t = DistributionTriple::from_weights(d, [&one, &one, &one]).unwrap();
        for spec in BoundSpec::all() {
            assert_eq!(evaluate_bound(&spec, &t).unwrap().value, 0.0);
        }
    }

    #[test]
    fn corner_triple_at_one_hundredth() {
        let d = Domain::from_bitstrings(&["000", "001", "010", "100"]).unwrap();
        let e = ratio(1, 100);
        let third = ratio(1, 3);
        let p = [&third - &e, &third - &e, &third - &e, &e * ratio(3, 1)];
        let pp = [&third - &e, &e * ratio(3, 1), &third - &e, &third - &e];
        let pd = [ratio(1, 2) - &e * ratio(2, 1), ratio(1, 2) - &e * ratio(2, 1), e.clone(), &e * ratio(3, 1)];
        let t = DistributionTriple::from_weights(d, [&p, &pp, &pd]).unwrap();
        let got = evaluate_bound(&BoundSpec::LB2, &t).unwrap();
        let want = binary_entropy(1.0 / 3.0 - 0.01).unwrap() + (2.0 / 3.0 - 0.02) + (1.0 - 0.04);
        assert!((got.value - want).abs() < 1e-9, "{} vs {want}", got.value);
        let sum: f64 = got.terms.iter().sum::<f64>() - got.h_x1;
        assert!((sum - got.value).abs() < 1e-12);
    }

    #[test]
    fn margin_violation_reported() {
        let d = Domain::from_bitstrings(&["000", "010"]).unwrap();
        let p = [ratio(1, 2), ratio(1, 2)];
        let pp = [ratio(1, 1), ratio(0, 1)];
        let t = DistributionTriple::from_weights(d, [&p, &pp, &p]).unwrap();
        let err = evaluate_bound(&BoundSpec::LB2, &t).unwrap_err();
        assert!(matches!(err, BoundError::MarginViolation { which: "p_prime", axis: 2, .. }), "{err}");
        // LB1 constrains only the first margin, which agrees here.
        assert!(evaluate_bound(&BoundSpec::LB1, &t).is_ok());
    }

    #[test]
    fn tensor_square_doubles() {
        let d = Domain::from_bitstrings(&["000", "001", "010", "100"]).unwrap();
        let e = ratio(1, 50);
        let third = ratio(1, 3);
        let p = [&third - &e, &third - &e, &third - &e, &e * ratio(3, 1)];
        let pp = [&third - &e, &e * ratio(3, 1), &third - &e, &third - &e];
        let pd = [ratio(1, 2) - &e * ratio(2, 1), ratio(1, 2) - &e * ratio(2, 1), e.clone(), &e * ratio(3, 1)];
        let t = DistributionTriple::from_weights(d, [&p, &pp, &pd]).unwrap();
        let one = evaluate_bound(&BoundSpec::LB2, &t).unwrap().value;
        let sq = t.tensor_square().unwrap();
        assert_eq!(sq.domain.len(), 16);
        let two = evaluate_bound(&BoundSpec::LB2, &sq).unwrap().value;
        assert!((two - 2.0 * one).abs() < 1e-9);
    }
}
