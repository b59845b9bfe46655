//! End-to-end acceptance run: one PASS/FAIL line per criterion, non-zero
//! exit if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trishare_cli::{run, EXIT_OK};
use trishare_core::bits::Log2;
use trishare_core::bound::{
    corner_family, epsilon_sweep, evaluate_bound, information_inequalities, preset_limit, preset_table2,
    view_margin_invariant, BoundSpec, DistributionTriple, Preset, DEFAULT_SCHEDULE,
};
use trishare_core::certify::{certified_lower_bound, search, SearchBudget, SupportStructure};
use trishare_core::domain::{canonicalize, classify_all, transform_mask, Domain, Transform};
use trishare_core::info::{conditional_entropy, ratio, residual_information, Axis, Exact, JointPmf};
use trishare_core::scheme::{
    assigned_scheme, canonical_rule, canonical_scheme, randomness_complexity, secret_pmf, validity_domain, verify,
    Construction, Scheme, ViolationKind,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:?}, limit {limit:?}"))
}

fn dom(bits: &[&str]) -> Domain {
    Domain::from_bitstrings(bits).unwrap()
}

fn log6() -> f64 {
    6f64.log2()
}

// Orbits of masks under coordinate negations and swaps, by closure.
fn oracle_orbits() -> Vec<BTreeSet<u8>> {
    let negate = |mask: u8, i: usize| -> u8 {
        (0..8u8).filter(|b| mask >> b & 1 == 1).fold(0, |acc, b| acc | 1 << (b ^ (4 >> i)))
    };
    let swap = |mask: u8, i: usize, j: usize| -> u8 {
        (0..8u8).filter(|b| mask >> b & 1 == 1).fold(0, |acc, b| {
            let (bi, bj) = (b >> (2 - i) & 1, b >> (2 - j) & 1);
            let moved = b & !(1 << (2 - i)) & !(1 << (2 - j)) | bi << (2 - j) | bj << (2 - i);
            acc | 1 << moved
        })
    };
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for start in 1..=255u8 {
        if seen.contains(&start) {
            continue;
        }
        let mut orbit = BTreeSet::from([start]);
        let mut todo = vec![start];
        while let Some(m) = todo.pop() {
            let next = [negate(m, 0), negate(m, 1), negate(m, 2), swap(m, 0, 1), swap(m, 1, 2), swap(m, 0, 2)];
            for n in next {
                if orbit.insert(n) {
                    todo.push(n);
                }
            }
        }
        seen.extend(orbit.iter().copied());
        orbits.push(orbit);
    }
    orbits
}

fn classification() -> Outcome {
    let start = Instant::now();
    let families = classify_all();
    ensure(families.len() == 21, || format!("{} families", families.len()))?;
    let mut all: Vec<u8> = families.iter().flat_map(|f| f.member_masks.clone()).collect();
    all.sort_unstable();
    ensure(all == (1..=255).collect::<Vec<u8>>(), || "families do not partition the 255 masks".into())?;
    let oracle: BTreeSet<BTreeSet<u8>> = oracle_orbits().into_iter().collect();
    let ours: BTreeSet<BTreeSet<u8>> = families.iter().map(|f| f.member_masks.iter().copied().collect()).collect();
    ensure(oracle == ours, || "orbits differ from the closure oracle".into())?;
    let size_of = |mask: u8| families.iter().find(|f| f.member_masks.contains(&mask)).unwrap().size();
    ensure(size_of(0b0000_0001) == 8, || "singleton orbit size".into())?;
    ensure(size_of(0xff) == 1, || "full cube orbit size".into())?;
    for mask in 1..=255u8 {
        let canon = canonicalize(&Domain::from_mask(mask).unwrap()).unwrap();
        for t in Transform::all() {
            let moved = Domain::from_mask(transform_mask(mask, &t)).unwrap();
            ensure(canonicalize(&moved).unwrap() == canon, || format!("mask {mask:#010b} under {t}"))?;
        }
    }
    within(start, Duration::from_secs(1), "classification")?;
    Ok(format!("21 families, 255 masks x 48 transforms invariant, {:?}", start.elapsed()))
}

// View distributions by brute force: party i holds shares VIEWS[i].
const VIEWS: [[usize; 2]; 3] = [[0, 2], [1, 0], [2, 1]];

fn view_law(s: &Scheme, m: usize, party: usize) -> BTreeMap<[usize; 2], Exact> {
    let mut law = BTreeMap::new();
    for (r, (_, pr)) in s.randomness().iter().enumerate() {
        let w = s.shares(m, r);
        let v = VIEWS[party].map(|c| w[c]);
        *law.entry(v).or_insert_with(|| ratio(0, 1)) += pr;
    }
    law.retain(|_, p| *p != ratio(0, 1));
    law
}

/// `(correct, private)` per party, checked independently of the library verifier.
fn oracle_verify(s: &Scheme) -> ([bool; 3], [bool; 3]) {
    let members = s.domain().members();
    let mut correct = [true; 3];
    let mut private = [true; 3];
    for i in 0..3 {
        for a in 0..members.len() {
            for b in a + 1..members.len() {
                let (la, lb) = (view_law(s, a, i), view_law(s, b, i));
                if members[a].coord(i) == members[b].coord(i) {
                    private[i] &= la == lb;
                } else {
                    correct[i] &= la.keys().all(|v| !lb.contains_key(v));
                }
            }
        }
    }
    (correct, private)
}

fn scheme_verification() -> Outcome {
    let start = Instant::now();
    let rho = [Log2(8), Log2(4), Log2(2), Log2(4), Log2(6)];
    for id in 1..=5u8 {
        let s = canonical_scheme(id, &validity_domain(id).unwrap()).unwrap();
        let report = verify(&s);
        ensure(report.passed(), || format!("scheme {id} fails: {report:?}"))?;
        ensure(oracle_verify(&s) == ([true; 3], [true; 3]), || format!("oracle rejects scheme {id}"))?;
        ensure(s.randomness_size() == rho[id as usize - 1], || format!("scheme {id} uses {:?}", s.randomness_size()))?;
    }
    let off_parity = canonical_rule(3, &dom(&["000", "001"])).unwrap();
    let report = verify(&off_parity);
    let cx = report.counterexample.clone().ok_or("no counterexample off parity")?;
    ensure(cx.kind == ViolationKind::Correctness, || format!("off parity: {cx:?}"))?;
    ensure(report.correct != [true; 3] && oracle_verify(&off_parity).0 == report.correct, || {
        format!("off-parity correctness {:?}", report.correct)
    })?;
    let leak = canonical_rule(3, &dom(&["000", "010"])).unwrap();
    let report = verify(&leak);
    ensure(!report.private[0] && report.counterexample.is_some(), || format!("{{000,010}}: {report:?}"))?;
    ensure(oracle_verify(&leak).1 == report.private, || "privacy verdicts differ from the oracle".into())?;
    within(start, Duration::from_secs(1), "verification")?;
    Ok(format!("schemes 1-5 verified, both negative mechanisms reproduced, {:?}", start.elapsed()))
}

fn rho_table() -> Outcome {
    let expected: Vec<Log2> = [1, 1, 1, 2, 2, 2, 2, 2, 4, 4, 6, 6, 6].into_iter().chain([8; 8]).map(Log2).collect();
    for id in 1..=21u8 {
        let (construction, s) = assigned_scheme(id).map_err(|e| format!("family {id}: {e}"))?;
        let want = expected[id as usize - 1];
        ensure(verify(&s).passed() && oracle_verify(&s) == ([true; 3], [true; 3]), || format!("family {id} scheme"))?;
        ensure(s.randomness_size() == want, || format!("family {id}: {:?} vs {want:?}", s.randomness_size()))?;
        if id <= 3 {
            ensure(matches!(construction, Construction::Reduced { .. }), || format!("family {id} not reduced"))?;
        }
        let lower = match preset_table2(id).unwrap() {
            Preset::Combinatorial => {
                certified_lower_bound(s.domain(), 8, SearchBudget::default()).map_err(|e| e.to_string())?.bits.value()
            }
            Preset::Distributions(_) => preset_limit(id).ok_or(format!("family {id}: no preset limit"))?,
        };
        ensure((lower - want.value()).abs() < 1e-3, || format!("family {id}: lower bound {lower}"))?;
    }
    let report = run(["trishare", "rho-table"]);
    ensure(report.code == EXIT_OK, || format!("rho-table exited {}", report.code))?;
    Ok("21 families tight, rho-table exits 0".into())
}

fn corner_sweep() -> Outcome {
    let start = Instant::now();
    let fam = corner_family();
    ensure(fam.domain == dom(&["000", "001", "010", "100"]), || "corner domain".into())?;
    let report = epsilon_sweep(&fam, &fam.spec, &DEFAULT_SCHEDULE).map_err(|e| e.to_string())?;
    ensure(report.monotone_increasing, || "sweep not monotone".into())?;
    let (eps, last) = report.points.last().map(|(e, v)| (*e, v.value)).ok_or("empty sweep")?;
    ensure(eps == 1e-6 && (last - log6()).abs() <= 1e-3, || format!("value {last} at {eps}"))?;
    // Closed form along the path: h(1/3 - e) + 2/3 - 2e + 1 - 4e.
    let h = |x: f64| -x * x.log2() - (1.0 - x) * (1.0 - x).log2();
    for (e, v) in &report.points {
        let closed = h(1.0 / 3.0 - e) + 2.0 / 3.0 - 2.0 * e + 1.0 - 4.0 * e;
        ensure((v.value - closed).abs() < 1e-9, || format!("at {e}: {} vs closed form {closed}", v.value))?;
    }
    within(start, Duration::from_secs(1), "sweep")?;
    Ok(format!("{last:.6} at 1e-6, monotone, {:?}", start.elapsed()))
}

/// Re-checks a witness from scratch: sizes, separation and support privacy.
fn oracle_structure(s: &SupportStructure) -> bool {
    let members = s.domain.members();
    let views = |m: usize, i: usize| -> BTreeSet<[usize; 2]> { s.sets[m].iter().map(|t| VIEWS[i].map(|c| t[c])).collect() };
    s.sets.len() == members.len()
        && s.sets.iter().all(|set| !set.is_empty() && set.len() <= s.cap)
        && (0..3).all(|i| {
            (0..members.len()).all(|a| {
                (0..members.len()).all(|b| {
                    a == b
                        || if members[a].coord(i) == members[b].coord(i) {
                            views(a, i) == views(b, i)
                        } else {
                            views(a, i).is_disjoint(&views(b, i))
                        }
                })
            })
        })
}

fn certification() -> Outcome {
    let budget = SearchBudget::default();
    let mut notes = Vec::new();
    for (bits, infeasible) in [(["000", "001", "010", "111"], 5), (["000", "010", "100", "101"], 7)] {
        let d = dom(&bits);
        let start = Instant::now();
        let v = search(&d, infeasible, budget).map_err(|e| e.to_string())?;
        ensure(!v.feasible, || format!("{bits:?} feasible at cap {infeasible}"))?;
        within(start, Duration::from_secs(600), "infeasibility proof")?;
        notes.push(format!("cap {infeasible} infeasible in {:?}", start.elapsed()));
        let v = search(&d, infeasible + 1, budget).map_err(|e| e.to_string())?;
        let w = v.witness.ok_or(format!("{bits:?} infeasible at cap {}", infeasible + 1))?;
        ensure(oracle_structure(&w), || format!("bad witness:\n{}", w.to_text()))?;
    }
    Ok(format!("{}; caps 6 and 8 witnessed", notes.join(", ")))
}

fn pmfs(domain: &Domain) -> Vec<(&'static str, Vec<Exact>)> {
    let n = domain.len() as i64;
    let skew_total = n * (n + 1) / 2;
    let mut near = vec![ratio(1, 1000); n as usize];
    near[0] = ratio(1000 - (n - 1), 1000);
    vec![
        ("uniform", vec![ratio(1, n); n as usize]),
        ("skewed", (1..=n).map(|k| ratio(k, skew_total)).collect()),
        ("near-degenerate", near),
    ]
}

/// Reverses the weights inside each fiber of X1, keeping the X1 margin.
fn shuffle_within_x1(domain: &Domain, w: &[Exact]) -> Vec<Exact> {
    let mut out = w.to_vec();
    for v in 0..2 {
        let fiber: Vec<usize> = (0..domain.len()).filter(|&m| domain.members()[m].coord(0) == v).collect();
        for (&a, &b) in fiber.iter().zip(fiber.iter().rev()) {
            out[a] = w[b].clone();
        }
    }
    out
}

fn inequality_suite() -> Outcome {
    let mut checked = 0;
    for id in 1..=5u8 {
        let s = canonical_scheme(id, &validity_domain(id).unwrap()).unwrap();
        for (name, w) in pmfs(s.domain()) {
            let p = secret_pmf(s.domain(), &w).unwrap();
            for c in information_inequalities(&s, &p).map_err(|e| e.to_string())? {
                ensure(c.holds, || format!("scheme {id}, {name}: {} ({} vs {})", c.name, c.lhs, c.rhs))?;
                checked += 1;
            }
            let q = secret_pmf(s.domain(), &shuffle_within_x1(s.domain(), &w)).unwrap();
            ensure(view_margin_invariant(&s, &p, &q).map_err(|e| e.to_string())?, || {
                format!("scheme {id}, {name}: party 1 view law moved")
            })?;
        }
    }
    Ok(format!("{checked} relations hold on 5 schemes x 3 pmfs; view margins invariant"))
}

fn random_pmf(rng: &mut ChaCha8Rng, names: [&str; 2]) -> JointPmf<Exact> {
    let (na, nb) = (rng.gen_range(2..=3), rng.gen_range(2..=3));
    let symbols = ["0", "1", "2"];
    let axes = vec![Axis::new(names[0], &symbols[..na]), Axis::new(names[1], &symbols[..nb])];
    let mut raw: Vec<(Vec<usize>, i64)> = Vec::new();
    for a in 0..na {
        for b in 0..nb {
            let w = if rng.gen_bool(0.35) { 0 } else { rng.gen_range(1..=9) };
            raw.push((vec![a, b], w));
        }
    }
    if raw.iter().all(|(_, w)| *w == 0) {
        raw[0].1 = 1;
    }
    let total: i64 = raw.iter().map(|(_, w)| w).sum();
    JointPmf::new(axes, raw.into_iter().filter(|(_, w)| *w > 0).map(|(o, w)| (o, ratio(w, total)))).unwrap()
}

fn tensorization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let p = random_pmf(&mut rng, ["A", "B"]);
        let q = random_pmf(&mut rng, ["C", "D"]);
        let pq = p.product(&q);
        let (a, b) = ([0, 2], [1, 3]);
        let ri = residual_information(&pq, &a, &b).unwrap();
        let ri_sum = residual_information(&p, &[0], &[1]).unwrap() + residual_information(&q, &[0], &[1]).unwrap();
        let h = conditional_entropy(&pq, &a, &b).unwrap();
        let h_sum = conditional_entropy(&p, &[0], &[1]).unwrap() + conditional_entropy(&q, &[0], &[1]).unwrap();
        worst = worst.max((ri - ri_sum).abs()).max((h - h_sum).abs());
    }
    ensure(worst <= 1e-9, || format!("largest additivity gap {worst:e}"))?;
    let Preset::Distributions(fam) = preset_table2(11).unwrap() else {
        return Err("family 11 has no distribution preset".into());
    };
    let triple = fam.at(&ratio(1, 100)).map_err(|e| e.to_string())?;
    let single = evaluate_bound(&fam.spec, &triple).map_err(|e| e.to_string())?.value;
    let squared = triple.tensor_square().map_err(|e| e.to_string())?;
    let double = evaluate_bound(&fam.spec, &squared).map_err(|e| e.to_string())?.value;
    ensure((double - 2.0 * single).abs() <= 1e-9, || format!("n=2 gives {double}, single {single}"))?;
    Ok(format!("100 pairs, largest gap {worst:.1e}; family-11 bound doubles ({single:.6} -> {double:.6})"))
}

/// A random triple meeting `spec`'s margin constraints, with random zeros.
fn random_triple(rng: &mut ChaCha8Rng, domain: &Domain, spec: &BoundSpec) -> DistributionTriple<Exact> {
    let n = domain.len();
    let mut raw: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(1..=12) }).collect();
    if raw.iter().all(|&w| w == 0) {
        raw[rng.gen_range(0..n)] = 1;
    }
    let total: i64 = raw.iter().sum();
    let p: Vec<Exact> = raw.iter().map(|&w| ratio(w, total)).collect();
    let (c1, c2) = spec.constrained_axes();
    let mut inner = |c: usize| -> Vec<Exact> {
        let mut out = vec![ratio(0, 1); n];
        for v in 0..2 {
            let fiber: Vec<usize> = (0..n).filter(|&m| domain.members()[m].coord(c) == v).collect();
            let margin = fiber.iter().fold(ratio(0, 1), |s, &m| s + &p[m]);
            let mut w: Vec<i64> = fiber.iter().map(|_| if rng.gen_bool(0.3) { 0 } else { rng.gen_range(1..=12) }).collect();
            if w.iter().all(|&x| x == 0) {
                w.iter_mut().for_each(|x| *x = 1);
            }
            let sum: i64 = w.iter().sum();
            for (&m, &x) in fiber.iter().zip(&w) {
                out[m] = &margin * ratio(x, sum);
            }
        }
        out
    };
    let (pp, pd) = (inner(c1), inner(c2));
    DistributionTriple::from_weights(domain.clone(), [&p, &pp, &pd]).unwrap()
}

fn soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let specs = BoundSpec::all();
    let mut tightest = f64::INFINITY;
    for id in 1..=21u8 {
        let (_, s) = assigned_scheme(id).unwrap();
        ensure(verify(&s).passed(), || format!("family {id} scheme"))?;
        let rho = randomness_complexity(&s);
        for _ in 0..50 {
            let spec = specs[rng.gen_range(0..specs.len())];
            let triple = random_triple(&mut rng, s.domain(), &spec);
            let v = evaluate_bound(&spec, &triple).map_err(|e| format!("family {id}: {e}"))?.value;
            ensure(v <= rho + 1e-9, || format!("family {id}, {spec}: bound {v} exceeds {rho}"))?;
            tightest = tightest.min(rho - v);
        }
        let cert = certified_lower_bound(s.domain(), s.randomness().len(), SearchBudget::default())
            .map_err(|e| e.to_string())?;
        ensure(cert.smallest_feasible.is_some() && cert.bits.value() <= rho + 1e-12, || {
            format!("family {id}: certified {:?} above {rho}", cert.bits)
        })?;
    }
    Ok(format!("1050 random triples within bounds (smallest slack {tightest:.2e}); certified <= rho for all 21"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("classification", classification),
        ("scheme verification", scheme_verification),
        ("rho table", rho_table),
        ("corner sweep", corner_sweep),
        ("combinatorial certification", certification),
        ("information inequalities", inequality_suite),
        ("tensorization", tensorization),
        ("soundness", soundness),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} ({name}): PASS  {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL  {why}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
