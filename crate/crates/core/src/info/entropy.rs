use std::collections::BTreeMap;

use super::graph::CharacteristicGraph;
use super::{check_disjoint, characteristic_components, InfoError, JointPmf, Weight};

fn h_of<'a, W: Weight + 'a>(masses: impl IntoIterator<Item = &'a W>) -> f64 {
    masses
        .into_iter()
        .map(|w| w.to_f64())
        .filter(|&m| m > 0.0)
        .map(|m| -m * m.log2())
        .sum()
}

/// Shannon entropy (bits) of the marginal on `axes`.
pub fn entropy<W: Weight>(p: &JointPmf<W>, axes: &[usize]) -> Result<f64, InfoError> {
    p.marginal(axes)?;
    Ok(h_of(p.marginal_masses(axes).values()))
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut u = a.to_vec();
    u.extend(b.iter().filter(|x| !a.contains(x)));
    u
}

pub fn conditional_entropy<W: Weight>(p: &JointPmf<W>, target: &[usize], given: &[usize]) -> Result<f64, InfoError> {
    check_disjoint(target, given)?;
    Ok(entropy(p, &union(target, given))? - entropy(p, given)?)
}

pub fn mutual_information<W: Weight>(p: &JointPmf<W>, a: &[usize], b: &[usize]) -> Result<f64, InfoError> {
    check_disjoint(a, b)?;
    Ok(entropy(p, a)? + entropy(p, b)? - entropy(p, &union(a, b))?)
}

/// I(A;B|C).
pub fn conditional_mutual_information<W: Weight>(
    p: &JointPmf<W>,
    a: &[usize],
    b: &[usize],
    c: &[usize],
) -> Result<f64, InfoError> {
    check_disjoint(a, b)?;
    check_disjoint(a, c)?;
    check_disjoint(b, c)?;
    let ac = union(a, c);
    let bc = union(b, c);
    Ok(entropy(p, &ac)? + entropy(p, &bc)? - entropy(p, &union(&ac, b))? - entropy(p, c)?)
}

fn component_entropy<W: Weight>(p: &JointPmf<W>, a: &[usize], graph: &CharacteristicGraph) -> f64 {
    let lookup: BTreeMap<&Vec<usize>, usize> =
        graph.left.iter().zip(&graph.left_component).map(|(v, &c)| (v, c)).collect();
    let mut mass = vec![W::zero(); graph.components];
    for (o, w) in p.marginal_masses(a) {
        if let Some(&c) = lookup.get(&o) {
            mass[c] = mass[c].clone() + w;
        }
    }
    h_of(mass.iter())
}

/// Gács-Körner common information: entropy of the connected-component index
/// of the characteristic graph.
pub fn gk_common_information<W: Weight>(p: &JointPmf<W>, a: &[usize], b: &[usize]) -> Result<f64, InfoError> {
    let graph = characteristic_components(p, a, b)?;
    Ok(component_entropy(p, a, &graph))
}

/// I(A;B) − CI_GK(A;B).
pub fn residual_information<W: Weight>(p: &JointPmf<W>, a: &[usize], b: &[usize]) -> Result<f64, InfoError> {
    let ri = mutual_information(p, a, b)? - gk_common_information(p, a, b)?;
    Ok(ri.max(0.0))
}

/// Residual information with the characteristic graph drawn from `support`
/// (full outcomes over `p`'s axes) together with `p`'s own support.
///
/// This is the value approached by full-support distributions converging to
/// `p` when `support` is their common support.
pub fn residual_information_on_support<W: Weight>(
    p: &JointPmf<W>,
    a: &[usize],
    b: &[usize],
    support: &[Vec<usize>],
) -> Result<f64, InfoError> {
    check_disjoint(a, b)?;
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    p.marginal(&both)?;
    if let Some(bad) = support.iter().find(|o| o.len() != p.axes().len()) {
        return Err(InfoError::BadOutcome(bad.clone()));
    }
    let own = p.iter().filter(|(_, w)| w.in_support()).map(|(o, _)| o.clone());
    let pairs = own
        .chain(support.iter().cloned())
        .map(|o| (a.iter().map(|&i| o[i]).collect(), b.iter().map(|&i| o[i]).collect()));
    let graph = CharacteristicGraph::from_pairs(pairs);
    let ri = mutual_information(p, a, b)? - component_entropy(p, a, &graph);
    Ok(ri.max(0.0))
}

pub fn binary_entropy(x: f64) -> Result<f64, InfoError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(InfoError::ProbabilityOutOfRange(x));
    }
    Ok(h_of([x, 1.0 - x].iter()))
}

/// True when `given` determines `target` on the support of `p`.
pub fn is_determined_by<W: Weight>(p: &JointPmf<W>, target: &[usize], given: &[usize]) -> Result<bool, InfoError> {
    check_disjoint(target, given)?;
    let joint = p.marginal(&union(given, target))?;
    let k = given.len();
    let mut seen: BTreeMap<&[usize], &[usize]> = BTreeMap::new();
    for (o, w) in joint.iter() {
        if !w.in_support() {
            continue;
        }
        let (g, t) = o.split_at(k);
        if *seen.entry(g).or_insert(t) != t {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when A and B are independent given C, checked as
/// `P(abc)·P(c) = P(ac)·P(bc)` for every supported combination.
pub fn is_conditionally_independent<W: Weight>(
    p: &JointPmf<W>,
    a: &[usize],
    b: &[usize],
    c: &[usize],
) -> Result<bool, InfoError> {
    check_disjoint(a, b)?;
    check_disjoint(a, c)?;
    check_disjoint(b, c)?;
    let abc = p.marginal_masses(&union(&union(a, b), c));
    let ac = p.marginal_masses(&union(a, c));
    let bc = p.marginal_masses(&union(b, c));
    let pc = p.marginal_masses(c);
    let (na, nb) = (a.len(), b.len());
    for (cv, wc) in &pc {
        let a_side: Vec<(&[usize], &W)> =
            ac.iter().filter(|(k, _)| &k[na..] == cv.as_slice()).map(|(k, w)| (&k[..na], w)).collect();
        let b_side: Vec<(&[usize], &W)> =
            bc.iter().filter(|(k, _)| &k[nb..] == cv.as_slice()).map(|(k, w)| (&k[..nb], w)).collect();
        for (av, wa) in &a_side {
            for (bv, wb) in &b_side {
                let mut key = av.to_vec();
                key.extend_from_slice(bv);
                key.extend_from_slice(cv);
                let wabc = abc.get(&key).cloned().unwrap_or_else(W::zero);
                if !(wabc * wc.clone()).same(&((*wa).clone() * (*wb).clone())) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::super::{ratio, Axis, Exact};
    use super::*;

    const TOL: f64 = 1e-9;

    fn pair(entries: &[([usize; 2], i64, i64)], nb: usize) -> JointPmf<Exact> {
        JointPmf::new(
            vec![Axis::binary("A"), Axis { name: "B".into(), alphabet: (0..nb).map(|i| i.to_string()).collect() }],
            entries.iter().map(|(o, n, d)| (o.to_vec(), ratio(*n, *d))),
        )
        .unwrap()
    }

    fn triangle() -> JointPmf<Exact> {
        pair(&[([0, 0], 1, 3), ([0, 1], 1, 3), ([1, 0], 1, 3)], 2)
    }

    fn independent() -> JointPmf<Exact> {
        pair(&[([0, 0], 1, 4), ([0, 1], 1, 4), ([1, 0], 1, 4), ([1, 1], 1, 4)], 2)
    }

    fn copy() -> JointPmf<Exact> {
        pair(&[([0, 0], 1, 2), ([1, 1], 1, 2)], 2)
    }

    #[test]
    fn entropy_examples() {
        let bit = JointPmf::new(vec![Axis::binary("A")], vec![(vec![0], ratio(1, 2)), (vec![1], ratio(1, 2))]).unwrap();
        assert!((entropy(&bit, &[0]).unwrap() - 1.0).abs() < TOL);
        let point = JointPmf::new(vec![Axis::binary("A")], vec![(vec![1], ratio(1, 1))]).unwrap();
        assert_eq!(entropy(&point, &[0]).unwrap(), 0.0);
        let third = JointPmf::new(
            vec![Axis::new("A", &["a", "b", "c"])],
            (0..3).map(|i| (vec![i], ratio(1, 3))),
        )
        .unwrap();
        assert!((entropy(&third, &[0]).unwrap() - 3f64.log2()).abs() < TOL);
    }

    #[test]
    fn conditional_and_mutual() {
        assert!((conditional_entropy(&independent(), &[0], &[1]).unwrap() - 1.0).abs() < TOL);
        assert!(conditional_entropy(&copy(), &[0], &[1]).unwrap().abs() < TOL);
        let h13 = binary_entropy(1.0 / 3.0).unwrap();
        assert!((conditional_entropy(&triangle(), &[0], &[1]).unwrap() - (3f64.log2() - h13)).abs() < TOL);
        assert!((conditional_entropy(&triangle(), &[0], &[1]).unwrap() - 2.0 / 3.0).abs() < TOL);
        assert!(mutual_information(&independent(), &[0], &[1]).unwrap().abs() < TOL);
        assert!((mutual_information(&copy(), &[0], &[1]).unwrap() - 1.0).abs() < TOL);
        let i = mutual_information(&triangle(), &[0], &[1]).unwrap();
        assert!((i - (3f64.log2() - 4.0 / 3.0)).abs() < TOL);
        assert!((i - 0.251629).abs() < 1e-6);
        assert_eq!(conditional_entropy(&copy(), &[0], &[0]), Err(InfoError::OverlappingAxes(0)));
    }

    #[test]
    fn common_and_residual() {
        assert!((gk_common_information(&copy(), &[0], &[1]).unwrap() - 1.0).abs() < TOL);
        assert_eq!(gk_common_information(&triangle(), &[0], &[1]).unwrap(), 0.0);
        let split = pair(&[([0, 0], 1, 4), ([0, 1], 1, 4), ([1, 2], 1, 2)], 3);
        assert!((gk_common_information(&split, &[0], &[1]).unwrap() - 1.0).abs() < TOL);
        assert!(residual_information(&copy(), &[0], &[1]).unwrap().abs() < TOL);
        assert!(residual_information(&independent(), &[0], &[1]).unwrap().abs() < TOL);
        let ri = residual_information(&triangle(), &[0], &[1]).unwrap();
        assert!((ri - mutual_information(&triangle(), &[0], &[1]).unwrap()).abs() < TOL);
    }

    #[test]
    fn support_override_connects_graph() {
        // A copy of a bit has RI 0, but if (0,1) is declared supported the
        // graph is connected and RI equals the full mutual information.
        let ri = residual_information_on_support(&copy(), &[0], &[1], &[vec![0, 1]]).unwrap();
        assert!((ri - 1.0).abs() < TOL);
    }

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert!((binary_entropy(0.5).unwrap() - 1.0).abs() < TOL);
        assert!((binary_entropy(1.0 / 3.0).unwrap() - 0.918296).abs() < 1e-6);
        assert!(binary_entropy(1.5).is_err());
    }

    #[test]
    fn exact_predicates() {
        assert!(is_determined_by(&copy(), &[0], &[1]).unwrap());
        assert!(!is_determined_by(&triangle(), &[0], &[1]).unwrap());
        assert!(is_conditionally_independent(&independent(), &[0], &[1], &[]).unwrap());
        assert!(!is_conditionally_independent(&triangle(), &[0], &[1], &[]).unwrap());
    }
}
