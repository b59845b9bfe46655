use proptest::prelude::*;
use trishare_core::domain::{canonicalize, transform_mask, transform_witness, Domain, Transform};
use trishare_core::info::{conditional_entropy, residual_information, Axis, JointPmf};

fn transform(i: usize) -> Transform {
    Transform::all().nth(i).unwrap()
}

/// A pmf on two axes of size 2 or 3 whose zero pattern comes from `weights`.
fn pmf(names: [&str; 2], rows: usize, weights: &[u8]) -> JointPmf<f64> {
    let cols = weights.len() / rows;
    let symbols = ["0", "1", "2"];
    let axes = vec![Axis::new(names[0], &symbols[..rows]), Axis::new(names[1], &symbols[..cols])];
    let total: f64 = weights.iter().map(|&w| f64::from(w)).sum::<f64>().max(1.0);
    let mut entries: Vec<(Vec<usize>, f64)> = (0..rows * cols)
        .filter(|&k| weights[k] > 0)
        .map(|k| (vec![k / cols, k % cols], f64::from(weights[k]) / total))
        .collect();
    if entries.is_empty() {
        entries.push((vec![0, 0], 1.0));
    }
    JointPmf::new(axes, entries).unwrap()
}

fn weights() -> impl Strategy<Value = (usize, Vec<u8>)> {
    (2usize..=3, 2usize..=3).prop_flat_map(|(r, c)| (Just(r), proptest::collection::vec(prop_oneof![Just(0u8), 1u8..9], r * c)))
}

proptest! {
    #[test]
    fn canonical_form_is_orbit_invariant(mask in 1u8..=255, a in 0usize..48, b in 0usize..48) {
        let d = Domain::from_mask(mask).unwrap();
        let moved = transform_mask(transform_mask(mask, &transform(a)), &transform(b));
        let image = Domain::from_mask(moved).unwrap();
        prop_assert_eq!(canonicalize(&image).unwrap(), canonicalize(&d).unwrap());
        let t = transform_witness(&d, &image).unwrap();
        prop_assert_eq!(transform_mask(mask, &t), moved);
    }

    #[test]
    fn residual_information_tensorizes((r1, w1) in weights(), (r2, w2) in weights()) {
        let p = pmf(["A", "B"], r1, &w1);
        let q = pmf(["C", "D"], r2, &w2);
        let pq = p.product(&q);
        let ri = residual_information(&pq, &[0, 2], &[1, 3]).unwrap();
        let ri_sum = residual_information(&p, &[0], &[1]).unwrap() + residual_information(&q, &[0], &[1]).unwrap();
        prop_assert!((ri - ri_sum).abs() < 1e-9, "{} vs {}", ri, ri_sum);
        let h = conditional_entropy(&pq, &[0, 2], &[1, 3]).unwrap();
        let h_sum = conditional_entropy(&p, &[0], &[1]).unwrap() + conditional_entropy(&q, &[0], &[1]).unwrap();
        prop_assert!((h - h_sum).abs() < 1e-9);
    }
}
