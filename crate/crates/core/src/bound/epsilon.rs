use num::{One, Signed, Zero};

use super::{evaluate_bound, evaluate_limit, BoundError, BoundEvaluation, BoundSpec, DistributionTriple};
use crate::domain::Domain;
use crate::info::{parse_probability, Exact};

/// Where a preset's limiting distributions come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresetSource {
    /// The published optimizing distributions.
    TableII,
    /// Point masses for families whose complexity is zero.
    Derived,
}

impl PresetSource {
    pub fn label(&self) -> &'static str {
        match self {
            PresetSource::TableII => "table-ii",
            PresetSource::Derived => "derived",
        }
    }
}

/// The affine path `ε ↦ base + ε·direction` of distribution triples on a
/// domain, valid for `0 < ε ≤ eps_max`. Directions sum to zero and preserve
/// the margins constrained by `spec`, so every point on the path is a valid
/// triple with full support on the domain.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonFamily {
    pub domain: Domain,
    pub spec: BoundSpec,
    /// Limiting weights at ε = 0, per domain member.
    pub base: [Vec<Exact>; 3],
    pub direction: [Vec<Exact>; 3],
    pub eps_max: Exact,
    pub source: PresetSource,
}

fn zero() -> Exact {
    Exact::zero()
}

fn int(n: usize) -> Exact {
    Exact::from_integer(n.into())
}

/// Moves mass off the support of `base` onto the rest of the domain: each
/// support point loses one unit, shared equally by the points outside.
fn spread_direction(base: &[Exact]) -> Vec<Exact> {
    let inside = base.iter().filter(|w| w.is_positive()).count();
    let outside = base.len() - inside;
    if outside == 0 {
        return vec![zero(); base.len()];
    }
    let gain = int(inside) / int(outside);
    base.iter().map(|w| if w.is_positive() { -Exact::one() } else { gain.clone() }).collect()
}

/// Direction for an inner distribution whose margin on coordinate `c` must
/// follow `outer` along the path. Within each fiber of `c`, points outside
/// the support gain one unit and the support points absorb the rest of the
/// fiber's required margin change; fibers with no base mass are filled
/// uniformly.
fn fiber_direction(domain: &Domain, c: usize, base: &[Exact], outer: &[Exact]) -> Vec<Exact> {
    let mut out = vec![zero(); base.len()];
    for v in 0..domain.alphabets()[c].len() {
        let fiber: Vec<usize> = (0..base.len()).filter(|&m| domain.members()[m].coord(c) == v).collect();
        if fiber.is_empty() {
            continue;
        }
        let margin = fiber.iter().fold(zero(), |s, &m| s + &outer[m]);
        let (inside, outside): (Vec<usize>, Vec<usize>) = fiber.iter().partition(|&&m| base[m].is_positive());
        if inside.is_empty() {
            let share = margin / int(fiber.len());
            for m in fiber {
                out[m] = share.clone();
            }
        } else {
            for &m in &outside {
                out[m] = Exact::one();
            }
            let share = (margin - int(outside.len())) / int(inside.len());
            for m in inside {
                out[m] = share.clone();
            }
        }
    }
    out
}

impl EpsilonFamily {
    /// Path ending at the given limiting weights, which must already satisfy
    /// `spec`'s margin constraints.
    pub fn from_limits(
        domain: Domain,
        spec: BoundSpec,
        base: [Vec<Exact>; 3],
        source: PresetSource,
    ) -> Result<Self, BoundError> {
        DistributionTriple::from_weights(domain.clone(), [&base[0], &base[1], &base[2]])?.check_constraints(&spec)?;
        let (c1, c2) = spec.constrained_axes();
        let d0 = spread_direction(&base[0]);
        let d1 = fiber_direction(&domain, c1, &base[1], &d0);
        let d2 = fiber_direction(&domain, c2, &base[2], &d0);
        let direction = [d0, d1, d2];
        let eps_max = Self::largest_step(&base, &direction);
        Ok(EpsilonFamily { domain, spec, base, direction, eps_max, source })
    }

    /// Path with an explicitly given direction and range.
    pub fn explicit(
        domain: Domain,
        spec: BoundSpec,
        base: [Vec<Exact>; 3],
        direction: [Vec<Exact>; 3],
        eps_max: Exact,
        source: PresetSource,
    ) -> Result<Self, BoundError> {
        let fam = EpsilonFamily { domain, spec, base, direction, eps_max, source };
        fam.limit_triple()?.check_constraints(&spec)?;
        fam.at(&fam.eps_max)?.check_constraints(&spec)?;
        Ok(fam)
    }

    /// Half the step at which the first weight would reach zero (1 when no
    /// weight decreases).
    fn largest_step(base: &[Vec<Exact>; 3], direction: &[Vec<Exact>; 3]) -> Exact {
        let limit = base
            .iter()
            .flatten()
            .zip(direction.iter().flatten())
            .filter(|(_, d)| d.is_negative())
            .map(|(b, d)| b / -d)
            .min();
        match limit {
            Some(l) => (l / int(2)).min(Exact::one()),
            None => Exact::one(),
        }
    }

    pub fn limit_triple(&self) -> Result<DistributionTriple<Exact>, BoundError> {
        DistributionTriple::from_weights(self.domain.clone(), [&self.base[0], &self.base[1], &self.base[2]])
    }

    pub fn at(&self, eps: &Exact) -> Result<DistributionTriple<Exact>, BoundError> {
        if !eps.is_positive() || *eps > self.eps_max {
            return Err(BoundError::EpsilonOutOfRange { eps: eps.to_string(), max: self.eps_max.to_string() });
        }
        let weights: Vec<Vec<Exact>> = (0..3)
            .map(|k| self.base[k].iter().zip(&self.direction[k]).map(|(b, d)| b + d * eps).collect())
            .collect();
        DistributionTriple::from_weights(self.domain.clone(), [&weights[0], &weights[1], &weights[2]])
    }

    /// The triple at a decimal ε, converted to an exact rational first.
    pub fn at_f64(&self, eps: f64) -> Result<DistributionTriple<Exact>, BoundError> {
        self.at(&exact_epsilon(eps)?)
    }

    /// The supremum approached along the path as ε → 0.
    pub fn limit(&self) -> Result<f64, BoundError> {
        Ok(evaluate_limit(&self.spec, &self.limit_triple()?)?.value)
    }
}

fn exact_epsilon(eps: f64) -> Result<Exact, BoundError> {
    let out_of_range = || BoundError::EpsilonOutOfRange { eps: eps.to_string(), max: "1".into() };
    if !eps.is_finite() {
        return Err(out_of_range());
    }
    parse_probability(&format!("{eps}")).or_else(|| Exact::from_float(eps)).ok_or_else(out_of_range)
}

/// Default ε schedule for sweeps.
pub const DEFAULT_SCHEDULE: [f64; 5] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub points: Vec<(f64, BoundEvaluation)>,
    /// Value at the smallest ε.
    pub limit_estimate: f64,
    /// Whether the value never decreases as ε shrinks.
    pub monotone_increasing: bool,
}

/// Evaluates `spec` along the path at each ε of a strictly decreasing schedule.
pub fn epsilon_sweep(fam: &EpsilonFamily, spec: &BoundSpec, schedule: &[f64]) -> Result<SweepReport, BoundError> {
    if schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(BoundError::ScheduleNotDecreasing);
    }
    let points = schedule
        .iter()
        .map(|&eps| Ok((eps, evaluate_bound(spec, &fam.at_f64(eps)?)?)))
        .collect::<Result<Vec<_>, BoundError>>()?;
    let limit_estimate = points.last().map(|(_, e)| e.value).unwrap_or(0.0);
    let monotone_increasing = points.windows(2).all(|w| w[1].1.value >= w[0].1.value - 1e-12);
    Ok(SweepReport { points, limit_estimate, monotone_increasing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::ratio;

    fn dom(bits: &[&str]) -> Domain {
        Domain::from_bitstrings(bits).unwrap()
    }

    #[test]
    fn perturbed_triples_keep_margins() {
        let d = dom(&["000", "001", "100"]);
        let base = [
            vec![ratio(1, 2), ratio(1, 2), ratio(0, 1)],
            vec![ratio(1, 2), ratio(0, 1), ratio(1, 2)],
            vec![ratio(1, 2), ratio(1, 2), ratio(0, 1)],
        ];
        let fam = EpsilonFamily::from_limits(d, BoundSpec::LB2, base, PresetSource::TableII).unwrap();
        for k in 0..3 {
            assert_eq!(fam.direction[k].iter().fold(zero(), |s, d| s + d), zero());
        }
        for eps in [fam.eps_max.clone(), ratio(1, 1000)] {
            let t = fam.at(&eps).unwrap();
            t.check_constraints(&BoundSpec::LB2).unwrap();
            assert!([&t.p, &t.p_prime, &t.p_double].iter().all(|q| q.len() == 3));
        }
        assert!(fam.eps_max >= ratio(1, 100));
    }

    #[test]
    fn range_and_schedule_checked() {
        let d = dom(&["000", "001"]);
        let half = vec![ratio(1, 2), ratio(1, 2)];
        let fam = EpsilonFamily::from_limits(d, BoundSpec::LB2, [half.clone(), half.clone(), half], PresetSource::TableII)
            .unwrap();
        assert_eq!(fam.eps_max, ratio(1, 1));
        assert!(matches!(fam.at(&ratio(0, 1)), Err(BoundError::EpsilonOutOfRange { .. })));
        assert!(matches!(fam.at(&ratio(2, 1)), Err(BoundError::EpsilonOutOfRange { .. })));
        assert_eq!(epsilon_sweep(&fam, &BoundSpec::LB2, &[1e-3, 1e-2]), Err(BoundError::ScheduleNotDecreasing));
        let r = epsilon_sweep(&fam, &BoundSpec::LB2, &DEFAULT_SCHEDULE).unwrap();
        assert!(r.points.iter().all(|(_, e)| (e.value - 1.0).abs() < 1e-12));
    }

    #[test]
    fn decimal_epsilon_is_exact() {
        assert_eq!(exact_epsilon(1e-6).unwrap(), ratio(1, 1_000_000));
        assert!(exact_epsilon(f64::NAN).is_err());
    }
}
