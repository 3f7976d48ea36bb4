//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;

use posetcoh::arrangement::{
    binomial, dij_formula, dij_table, exterior_power_functor, region, truncate_functor, truncation, Arrangement,
    IntersectionLattice, Region,
};
use posetcoh::derived::{cohomology, homology, nerve_cohomology_oracle, nerve_homology_oracle};
use posetcoh::fixtures::{get_fixture, run_fixture_assertions};
use posetcoh::mackey::{mackey_hypothesis, permutation_functor, verify_weak_mackey, MackeyData};
use posetcoh::mobius::{atom_sequence_check, mobius, verify_atomic_cohomology};
use posetcoh::random::{random_bounded_poset, random_functor, random_graded_poset, random_poset, rng};
use posetcoh::shellability::{find_ordering, SearchOptions};
use posetcoh::stability::{check_costability, check_stability, ShellablePair};
use posetcoh::{BoundedPoset, Error, Field, FunctorOnPoset, GradedDims, Matrix, Result, Variance};

const Q: Field = Field::Rational;
const F5: Field = Field::Prime(5);

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn field_for(seed: u64) -> Field {
    if seed % 2 == 0 {
        Q
    } else {
        F5
    }
}

fn engine(f: &FunctorOnPoset, s: &[usize]) -> Result<GradedDims> {
    match f.variance() {
        Variance::Contravariant => cohomology(f, s),
        Variance::Covariant => homology(f, s),
    }
}

fn oracle(f: &FunctorOnPoset, s: &[usize]) -> Result<GradedDims> {
    match f.variance() {
        Variance::Contravariant => nerve_cohomology_oracle(f, s),
        Variance::Covariant => nerve_homology_oracle(f, s),
    }
}

fn pair_of(name: &str) -> ShellablePair {
    let f = get_fixture(name).expect("fixture exists");
    ShellablePair::new(f.bounded, f.ordering.expect("fixture has an ordering")).expect("fixture ordering is valid")
}

fn shared(b: &BoundedPoset) -> Arc<posetcoh::Poset> {
    Arc::new(b.poset().clone())
}

/// Oracle equivalence on seeded random functors.
fn criterion_1() -> Outcome {
    const PER_VARIANCE: u64 = 120;
    const MAX_ELEMENTS: usize = 8;
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut compared = [0usize; 2];
    let mut higher = 0;
    for (v, variance) in [Variance::Contravariant, Variance::Covariant].into_iter().enumerate() {
        for seed in 0..PER_VARIANCE {
            let mut r = rng(1_000 + seed);
            let poset = Arc::new(if seed % 2 == 0 {
                let n = 1 + (seed / 2 % 8) as usize;
                let density = r.gen_range(0.15..0.5);
                random_poset(&mut r, n, density)
            } else {
                let mut layers = Vec::new();
                while layers.len() < 4 {
                    let size = r.gen_range(2..=3);
                    if layers.iter().sum::<usize>() + size > MAX_ELEMENTS {
                        break;
                    }
                    layers.push(size);
                }
                let density = r.gen_range(0.3..0.8);
                random_graded_poset(&mut r, &layers, density)
            });
            assert!(poset.len() <= MAX_ELEMENTS);
            let f = random_functor(&mut r, poset.clone(), variance, field_for(seed / 2), 3);
            assert!(f.dims().iter().all(|&d| d <= 3));
            let s: Vec<usize> = if seed % 3 == 0 {
                poset.elements().collect()
            } else {
                poset.elements().filter(|_| r.gen_bool(0.75)).collect()
            };
            let (a, b) = (engine(&f, &s).unwrap(), oracle(&f, &s).unwrap());
            compared[v] += 1;
            if a.iter().any(|(i, d)| i > 0 && d > 0) {
                higher += 1;
            }
            if a != b {
                mismatches.push(format!("{variance} seed {seed}: engine {a} oracle {b}"));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = mismatches.is_empty() && elapsed < Duration::from_secs(120) && compared.iter().all(|&c| c >= 100);
    outcome(
        pass,
        format!(
            "{} contravariant + {} covariant functors over Q and F_5 ({higher} with nonzero higher groups), \
             {} mismatches, {:.1}s (limit 120s){}",
            compared[0],
            compared[1],
            mismatches.len(),
            elapsed.as_secs_f64(),
            mismatches.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    )
}

#[derive(Default)]
struct Soundness {
    checks: usize,
    stable: usize,
    violations: Vec<String>,
    vanishing_without_stability: usize,
}

impl Soundness {
    fn run(&mut self, label: &str, pair: &ShellablePair, f: &FunctorOnPoset, with_oracle: bool) {
        let b = pair.bounded();
        let s = b.without_top();
        let h = engine(f, &s).unwrap();
        if with_oracle {
            assert_eq!(h, oracle(f, &s).unwrap(), "{label}: engine and oracle disagree");
        }
        for i in 1..b.degree_of_poset() {
            let report = match f.variance() {
                Variance::Contravariant => check_stability(pair, f, i),
                Variance::Covariant => check_costability(pair, f, i),
            }
            .unwrap();
            self.checks += 1;
            if report.pass {
                self.stable += 1;
                if h.get(i as i64) != 0 {
                    self.violations.push(format!("{label} at {i}: H = {}", h.get(i as i64)));
                }
            } else if h.get(i as i64) == 0 {
                self.vanishing_without_stability += 1;
            }
        }
    }
}

/// Stability implies vanishing on random shellable posets and on every fixture.
fn criterion_2() -> Outcome {
    let mut sound = Soundness::default();
    let mut posets = 0;
    let mut seed = 0u64;
    while posets < 40 && seed < 2_000 {
        seed += 1;
        let mut r = rng(50_000 + seed);
        let inner = r.gen_range(2..=6);
        let density = r.gen_range(0.3..0.7);
        let poset = random_bounded_poset(&mut r, inner, density);
        let bounded = BoundedPoset::new(poset).unwrap();
        if bounded.degree_of_poset() < 3 {
            continue;
        }
        let Some(family) = find_ordering(&bounded, SearchOptions::default()).unwrap() else {
            continue;
        };
        let pair = ShellablePair::new(bounded.clone(), family).unwrap();
        posets += 1;
        for k in 0..3u64 {
            let field = field_for(seed + k);
            for variance in [Variance::Contravariant, Variance::Covariant] {
                let f = random_functor(&mut r, shared(&bounded), variance, field, 3);
                sound.run(&format!("random seed {seed}.{k} {variance}"), &pair, &f, true);
            }
        }
    }
    let names = [
        "boolean-3",
        "boolean-4",
        "partition-3",
        "partition-4",
        "gamma1",
        "gamma2",
        "gamma7",
        "gamma11",
        "coord-arr-3",
        "coord-arr-4",
        "braid-arr-3",
        "braid-arr-4",
    ];
    for name in names {
        let pair = pair_of(name);
        let b = pair.bounded();
        let small = b.len() <= 11;
        let above_bottom: Vec<usize> = b.elements().filter(|&x| x != b.bottom()).collect();
        for variance in [Variance::Contravariant, Variance::Covariant] {
            let c = FunctorOnPoset::constant_on(shared(b), variance, Q, 1, &above_bottom).unwrap();
            sound.run(&format!("{name} constant {variance}"), &pair, &c, small);
            for p in b.elements().filter(|&p| p != b.top()) {
                let a = FunctorOnPoset::atomic(shared(b), variance, Q, p, 1);
                sound.run(&format!("{name} atomic {} {variance}", b.id(p)), &pair, &a, false);
            }
            let mut r = rng(7_000 + b.len() as u64);
            let f = random_functor(&mut r, shared(b), variance, F5, 2);
            sound.run(&format!("{name} random {variance}"), &pair, &f, small);
        }
    }
    for a in [Arrangement::coordinate(3), Arrangement::coordinate(4), Arrangement::braid(4)] {
        let lattice = IntersectionLattice::new(&a);
        let pair = ShellablePair::new(lattice.bounded().clone(), posetcoh::arrangement::arrangement_ordering(&lattice))
            .unwrap();
        for j in 0..=a.ambient_dim() {
            sound.run(&format!("lattice exterior power {j}"), &pair, &exterior_power_functor(&lattice, j), false);
        }
    }
    let pass = sound.violations.is_empty() && posets >= 20 && sound.stable > 0;
    outcome(
        pass,
        format!(
            "{posets} random shellable posets + {} fixtures: {} (co)stability checks, {} passed, {} violations; \
             {} vanishing degrees without stability{}",
            names.len(),
            sound.checks,
            sound.stable,
            sound.violations.len(),
            sound.vanishing_without_stability,
            sound.violations.first().map(|v| format!("; first: {v}")).unwrap_or_default()
        ),
    )
}

/// Orderings and `C(c)` sets of the four group posets.
fn criterion_3() -> Outcome {
    let expected = [("gamma1", 5), ("gamma2", 3), ("gamma7", 3), ("gamma11", 3)];
    let mut parts = Vec::new();
    let mut pass = true;
    for (name, sets) in expected {
        let report = run_fixture_assertions(name).unwrap();
        let c_checks = report.checks.iter().filter(|c| c.check.starts_with("C(")).count();
        let ordering_ok = report.checks.iter().any(|c| c.check == "ordering" && c.pass);
        pass &= report.pass && ordering_ok && c_checks == sets;
        parts.push(format!("{name} {c_checks}/{sets} sets {}", if report.pass { "equal" } else { "DIFFER" }));
    }
    let g1 = get_fixture("gamma1").unwrap();
    let bd = g1.expected_c_sets.iter().find(|(c, _)| c == "bd<1").map(|(_, s)| s.clone());
    pass &= bd == Some(vec!["b".to_string(), "d".to_string()]);
    outcome(pass, parts.join(", "))
}

/// The atomic functor `A(p, K^m)` has (co)homology `m |μ(p, 1̂)|` in degree `cd(p) - 1`.
fn criterion_4() -> Outcome {
    let mut cases = 0;
    let mut failures = Vec::new();
    for name in ["boolean-3", "boolean-4", "partition-3", "coord-arr-4"] {
        let pair = pair_of(name);
        let b = pair.bounded();
        for p in b.elements().filter(|&p| p != b.top()) {
            for m in [1, 2] {
                let report = verify_atomic_cohomology(&pair, p, m, Q).unwrap();
                let mu = mobius(b, p, b.top()).unwrap().unsigned_abs() as usize;
                let want = GradedDims::concentrated(b.codegree(p) as i64 - 1, m * mu);
                cases += 1;
                if !report.pass || report.cohomology != want || report.homology != want {
                    failures.push(format!("{name} at {} with m = {m}", b.id(p)));
                }
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{cases} cases on B_3, B_4, Π_3, coordinate K^4; {} failures {:?}", failures.len(), failures),
    )
}

/// Segment values, band formula and vanishing outside both regions.
fn criterion_5() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, a) in [
        ("coordinate K^3", Arrangement::coordinate(3)),
        ("coordinate K^4", Arrangement::coordinate(4)),
        ("braid K^3", Arrangement::braid(3)),
    ] {
        let start = Instant::now();
        let lattice = IntersectionLattice::new(&a);
        let d = lattice.degree();
        let n = a.ambient_dim();
        let table = dij_table(&lattice, d, n).unwrap();
        let (mut segment, mut band, mut outside, mut unasserted) = (0, 0, 0, 0);
        let mut bad = Vec::new();
        for (i, row) in table.iter().enumerate() {
            for (j, &value) in row.iter().enumerate() {
                let value = value as i64;
                match region(&lattice, i, j) {
                    Region::Outside => {
                        outside += 1;
                        if value != 0 {
                            bad.push(format!("d_{i},{j} = {value} outside"));
                        }
                    }
                    Region::Segment if j + 2 <= d => {
                        segment += 1;
                        if value != binomial(n, j) as i64 {
                            bad.push(format!("d_0,{j} = {value}"));
                        }
                    }
                    Region::Segment if j + 1 == n => {
                        segment += 1;
                        if value != a.len() as i64 {
                            bad.push(format!("d_0,{j} = {value} != #H"));
                        }
                    }
                    Region::Segment => unasserted += 1,
                    Region::Band => match dij_formula(&lattice, i, j) {
                        Ok(formula) => {
                            band += 1;
                            if formula != value {
                                bad.push(format!("d_{i},{j} = {value}, formula {formula}"));
                            }
                        }
                        Err(Error::OutOfFormulaDomain(_)) => unasserted += 1,
                        Err(e) => panic!("{e}"),
                    },
                }
            }
        }
        if name == "coordinate K^3" && table[1][1] != 0 {
            bad.push("d_1,1 != 0".into());
        }
        let elapsed = start.elapsed();
        pass &= bad.is_empty() && elapsed < Duration::from_secs(60);
        parts.push(format!(
            "{name}: {segment} segment, {band} band, {outside} outside, {unasserted} reported only, {} wrong, {:.1}s",
            bad.len(),
            elapsed.as_secs_f64()
        ));
    }
    outcome(pass, parts.join("; "))
}

/// The constant functor extended by zero vanishes in degrees `1..=d-3`, with `|μ|` in degree `d-2`.
fn criterion_6() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["boolean-3", "boolean-4", "coord-arr-3", "coord-arr-4", "braid-arr-4"] {
        let f = get_fixture(name).unwrap();
        let b = &f.bounded;
        let d = b.degree_of_poset();
        let support: Vec<usize> = b.elements().filter(|&x| x != b.bottom()).collect();
        let c = FunctorOnPoset::constant_on(shared(b), Variance::Contravariant, Q, 1, &support).unwrap();
        let h = cohomology(&c, &b.without_top()).unwrap();
        let mu = mobius(b, b.bottom(), b.top()).unwrap().unsigned_abs() as usize;
        let ok = (1..=d as i64 - 3).all(|i| h.get(i) == 0) && h.get(d as i64 - 2) == mu;
        pass &= ok;
        parts.push(format!("{name}: H = {h}, |μ| = {mu}{}", if ok { "" } else { " MISMATCH" }));
    }
    outcome(pass, parts.join("; "))
}

/// Atom sequence on the truncated lattice with the exterior power functor.
fn atom_sequence_case(a: &Arrangement, i: usize, j: usize) -> (bool, String) {
    let lattice = IntersectionLattice::new(a);
    let d = lattice.degree();
    let (truncated, map) = truncation(lattice.bounded(), d - 1 - i).unwrap();
    let lambda = exterior_power_functor(&lattice, j);
    let f = truncate_functor(&lambda, &truncated, &map).unwrap();
    let same =
        homology(&lambda, &lattice.bounded().without_top()).unwrap() == homology(&f, &truncated.without_top()).unwrap();
    let family = find_ordering(&truncated, SearchOptions::default()).unwrap().expect("truncated lattice is shellable");
    let pair = ShellablePair::new(truncated.clone(), family).unwrap();
    let atoms = truncated.atoms();
    match atom_sequence_check(&pair, &f, &atoms) {
        Ok(r) => {
            let ok = same && r.alternating_sum == 0 && r.corollary_holds != Some(false);
            let corollary = match r.corollary_holds {
                Some(true) => "corollary holds",
                Some(false) => "corollary FAILS",
                None => "corollary not applicable",
            };
            (ok, format!("i = {i}, j = {j}: terms {:?}, sum {}, {corollary}", r.terms, r.alternating_sum))
        }
        Err(e) => (false, format!("i = {i}, j = {j}: {e}")),
    }
}

fn criterion_7() -> Outcome {
    let (mut pass, mut parts) = (true, Vec::new());
    for (label, a, i, j) in [
        ("coordinate K^3", Arrangement::coordinate(3), 1, 1),
        ("coordinate K^4", Arrangement::coordinate(4), 1, 2),
        ("coordinate K^4", Arrangement::coordinate(4), 2, 1),
    ] {
        let (ok, detail) = atom_sequence_case(&a, i, j);
        pass &= ok;
        parts.push(format!("{label} {detail}"));
    }
    outcome(pass, parts.join("; "))
}

/// Mackey functors on the first group poset: vanishing wherever the quasi-unit hypothesis holds.
fn criterion_8() -> Outcome {
    let pair = pair_of("gamma1");
    let b = pair.bounded();
    let poset = shared(b);
    let s = b.without_top();
    let mut variants: Vec<(&str, MackeyData)> = Vec::new();
    let (g, t) = permutation_functor(poset.clone(), Q, &b.atoms()).unwrap();
    variants.push(("permutation", MackeyData::new(g.clone(), t.clone()).unwrap()));
    let mut dead = t;
    let (a, ad) = (b.index_of("a").unwrap(), b.index_of("ad").unwrap());
    dead.insert((a, ad), Matrix::zeros(Q, g.dim(ad), g.dim(a)));
    variants.push(("permutation, one zero transfer", MackeyData::new(g, dead).unwrap()));
    let support: Vec<usize> = b.elements().filter(|&x| x != b.bottom()).collect();
    let c = FunctorOnPoset::constant_on(poset, Variance::Contravariant, Q, 1, &support).unwrap();
    let mut zero = HashMap::new();
    for i in b.elements() {
        for j in b.below(i) {
            zero.insert((j, i), Matrix::zeros(Q, c.dim(i), c.dim(j)));
        }
    }
    variants.push(("constant, zero transfers", MackeyData::new(c, zero).unwrap()));
    let (mut pass, mut parts, mut fired) = (true, Vec::new(), 0);
    for (label, m) in &variants {
        pass &= verify_weak_mackey(m).pass;
        let h = cohomology(m.functor(), &s).unwrap();
        assert_eq!(h, nerve_cohomology_oracle(m.functor(), &s).unwrap());
        let mut predicted = Vec::new();
        for i in 1..b.degree_of_poset() {
            if mackey_hypothesis(&pair, m, i).unwrap() {
                predicted.push(i);
                fired += 1;
                pass &= h.get(i as i64) == 0;
            }
        }
        parts.push(format!("{label}: hypothesis at {predicted:?}, H = {h}"));
    }
    pass &= fired > 0;
    outcome(pass, parts.join("; "))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("oracle equivalence", criterion_1),
        ("stability soundness", criterion_2),
        ("group poset C-sets", criterion_3),
        ("atomic functors", criterion_4),
        ("arrangement tables", criterion_5),
        ("constant functor vanishing", criterion_6),
        ("atom sequence bookkeeping", criterion_7),
        ("Mackey vanishing", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let result = run();
        if !result.pass {
            failed += 1;
        }
        println!("criterion {} [{}] {name}: {}", k + 1, if result.pass { "PASS" } else { "FAIL" }, result.detail);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
