//! Built-in example posets with orderings and expected data.

use serde::Serialize;

use crate::arrangement::{arrangement_ordering, Arrangement, IntersectionLattice};
use crate::error::{Error, Result};
use crate::mobius::mobius;
use crate::poset::{BoundedPoset, Poset};
use crate::shellability::{c_set, find_ordering, verify_ordering, OrderingFamily, SearchOptions};

/// A named bounded poset with an ordering and the values it is known to produce.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub bounded: BoundedPoset,
    pub ordering: Option<OrderingFamily>,
    /// Chain label and the expected `C(c)` as element ids.
    pub expected_c_sets: Vec<(String, Vec<String>)>,
    /// Expected `μ(p, q)` as `(p, q, value)`.
    pub expected_mobius: Vec<(String, String, i64)>,
    pub arrangement: Option<Arrangement>,
}

pub const FIXTURE_FAMILIES: &[&str] =
    &["boolean-n", "partition-n", "gamma1", "gamma2", "gamma7", "gamma11", "coord-arr-n", "braid-arr-n"];

/// `B_n` with elements `{}`, `{1}`, `{1,2}`, ...
pub fn boolean_lattice(n: usize) -> BoundedPoset {
    let name = |mask: usize| {
        let items: Vec<String> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", items.join(","))
    };
    let ids: Vec<String> = (0..1usize << n).map(name).collect();
    let mut covers = Vec::new();
    for m in 0..1usize << n {
        for i in 0..n {
            if m >> i & 1 == 0 {
                covers.push((name(m), name(m | 1 << i)));
            }
        }
    }
    BoundedPoset::new(Poset::new(&ids, &covers).expect("subsets ordered by inclusion")).expect("B_n is bounded")
}

fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for x in 1..=n {
        let mut next = Vec::new();
        for p in &out {
            for b in 0..p.len() {
                let mut q = p.clone();
                q[b].push(x);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![x]);
            next.push(q);
        }
        out = next;
    }
    out
}

fn partition_id(p: &[Vec<usize>]) -> String {
    let mut blocks: Vec<String> = p.iter().map(|b| b.iter().map(usize::to_string).collect()).collect();
    blocks.sort();
    blocks.join("|")
}

/// `Π_n`: set partitions of `{1..n}` ordered by refinement, finest at the bottom.
pub fn partition_lattice(n: usize) -> BoundedPoset {
    let parts = set_partitions(n);
    let ids: Vec<String> = parts.iter().map(|p| partition_id(p)).collect();
    let mut covers = Vec::new();
    for p in &parts {
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                let mut q: Vec<Vec<usize>> =
                    p.iter().enumerate().filter(|&(k, _)| k != a && k != b).map(|(_, x)| x.clone()).collect();
                let mut merged = p[a].clone();
                merged.extend(&p[b]);
                merged.sort_unstable();
                q.push(merged);
                covers.push((partition_id(p), partition_id(&q)));
            }
        }
    }
    BoundedPoset::new(Poset::new(&ids, &covers).expect("refinement order")).expect("Π_n is bounded")
}

fn poset_from(elements: &[&str], covers: &[(&str, &str)]) -> BoundedPoset {
    BoundedPoset::new(Poset::new(elements, covers).expect("fixture poset")).expect("fixture is bounded")
}

fn gamma1() -> Fixture {
    let elements = ["0", "a", "c", "d", "b", "ac", "ad", "bc", "bd", "cd", "1"];
    let mut covers = vec![
        ("a", "ac"),
        ("a", "ad"),
        ("c", "ac"),
        ("c", "cd"),
        ("c", "bc"),
        ("d", "cd"),
        ("d", "bd"),
        ("d", "ad"),
        ("b", "bc"),
        ("b", "bd"),
    ];
    for x in ["a", "b", "c", "d"] {
        covers.push(("0", x));
    }
    for x in ["ac", "ad", "bc", "bd", "cd"] {
        covers.push((x, "1"));
    }
    let bounded = poset_from(&elements, &covers);
    let order = ["ac", "ad", "bc", "bd", "cd", "a", "c", "d", "b"];
    let ordering = OrderingFamily::global_from_ids(&bounded, &order).expect("ids exist");
    let c = |chain: &str, set: &[&str]| (chain.to_string(), set.iter().map(|s| s.to_string()).collect());
    Fixture {
        name: "gamma1".into(),
        ordering: Some(ordering),
        expected_c_sets: vec![
            c("ac<1", &[]),
            c("ad<1", &["a"]),
            c("bc<1", &["c"]),
            c("bd<1", &["b", "d"]),
            c("cd<1", &["c", "d"]),
        ],
        expected_mobius: vec![("0".into(), "1".into(), mobius_value(&bounded))],
        bounded,
        arrangement: None,
    }
}

fn mobius_value(b: &BoundedPoset) -> i64 {
    mobius(b.poset(), b.bottom(), b.top()).expect("bottom ≤ top")
}

/// The shape shared by the posets of `Γ_2`, `Γ_7` and `Γ_11`.
fn amalgam_shape(name: &str, bottom: &str, letter: &str) -> Fixture {
    let am = bottom;
    let amx = format!("{bottom},{letter}");
    let amt = format!("a,m,{letter}");
    let svt = format!("s,v,{letter}");
    let elements = [am, "a,m", "s,v", amx.as_str(), "a,m,s,v", amt.as_str(), svt.as_str(), "1"];
    let covers = [
        (am, "a,m"),
        (am, "s,v"),
        (am, amx.as_str()),
        ("a,m", "a,m,s,v"),
        ("a,m", amt.as_str()),
        ("s,v", "a,m,s,v"),
        ("s,v", svt.as_str()),
        (amx.as_str(), svt.as_str()),
        (amx.as_str(), amt.as_str()),
        ("a,m,s,v", "1"),
        (amt.as_str(), "1"),
        (svt.as_str(), "1"),
    ];
    let bounded = poset_from(&elements, &covers);
    let order = [svt.as_str(), amt.as_str(), "a,m,s,v", amx.as_str(), "a,m", "s,v"];
    let ordering = OrderingFamily::global_from_ids(&bounded, &order).expect("ids exist");
    Fixture {
        name: name.into(),
        ordering: Some(ordering),
        expected_c_sets: vec![
            (format!("{svt}<1"), vec![]),
            (format!("{amt}<1"), vec![amx.clone()]),
            ("a,m,s,v<1".into(), vec!["a,m".into(), "s,v".into()]),
        ],
        expected_mobius: vec![(am.into(), "1".into(), mobius_value(&bounded))],
        bounded,
        arrangement: None,
    }
}

fn searched(name: String, bounded: BoundedPoset, expected_mobius: i64, arrangement: Option<Arrangement>) -> Fixture {
    let ordering = match &arrangement {
        Some(a) => Some(arrangement_ordering(&IntersectionLattice::new(a))),
        None => find_ordering(&bounded, SearchOptions::default()).ok().flatten(),
    };
    let (b, t) = (bounded.id(bounded.bottom()).to_string(), bounded.id(bounded.top()).to_string());
    Fixture {
        name,
        bounded,
        ordering,
        expected_c_sets: vec![],
        expected_mobius: vec![(b, t, expected_mobius)],
        arrangement,
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn sized(name: &str, prefix: &str, max: usize) -> Result<Option<usize>> {
    let Some(rest) = name.strip_prefix(prefix) else {
        return Ok(None);
    };
    match rest.parse::<usize>() {
        Ok(n) if (1..=max).contains(&n) => Ok(Some(n)),
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

pub fn get_fixture(name: &str) -> Result<Fixture> {
    match name {
        "gamma1" => return Ok(gamma1()),
        "gamma2" => return Ok(amalgam_shape("gamma2", "am", "u")),
        "gamma7" => return Ok(amalgam_shape("gamma7", "ma", "w")),
        "gamma11" => return Ok(amalgam_shape("gamma11", "ma", "w")),
        _ => {}
    }
    let sign = |n: usize| if n % 2 == 0 { 1 } else { -1 };
    if let Some(n) = sized(name, "boolean-", 5)? {
        return Ok(searched(name.into(), boolean_lattice(n), sign(n), None));
    }
    if let Some(n) = sized(name, "partition-", 4)? {
        return Ok(searched(name.into(), partition_lattice(n), sign(n - 1) * factorial(n - 1), None));
    }
    if let Some(n) = sized(name, "coord-arr-", 5)? {
        let a = Arrangement::coordinate(n);
        let l = IntersectionLattice::new(&a);
        return Ok(searched(name.into(), l.bounded().clone(), sign(n), Some(a)));
    }
    if let Some(n) = sized(name, "braid-arr-", 4)? {
        if n < 2 {
            return Err(Error::UnknownFixture(name.to_string()));
        }
        let a = Arrangement::braid(n);
        let l = IntersectionLattice::new(&a);
        return Ok(searched(name.into(), l.bounded().clone(), sign(n - 1) * factorial(n - 1), Some(a)));
    }
    Err(Error::UnknownFixture(name.to_string()))
}

/// Every concrete fixture name the registry serves in its default sizes.
pub fn fixture_names() -> Vec<String> {
    let mut v: Vec<String> = ["gamma1", "gamma2", "gamma7", "gamma11"].iter().map(|s| s.to_string()).collect();
    v.extend((1..=4).map(|n| format!("boolean-{n}")));
    v.extend((1..=4).map(|n| format!("partition-{n}")));
    v.extend((1..=4).map(|n| format!("coord-arr-{n}")));
    v.extend((2..=4).map(|n| format!("braid-arr-{n}")));
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureCheck {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub name: String,
    pub pass: bool,
    pub checks: Vec<FixtureCheck>,
}

impl FixtureReport {
    /// `AssertionFailed` listing the failing checks.
    pub fn into_result(self) -> Result<FixtureReport> {
        if self.pass {
            return Ok(self);
        }
        let diff: Vec<String> =
            self.checks.iter().filter(|c| !c.pass).map(|c| format!("{}: {}", c.check, c.detail)).collect();
        Err(Error::AssertionFailed(diff.join("; ")))
    }
}

pub fn run_fixture_assertions(name: &str) -> Result<FixtureReport> {
    let f = get_fixture(name)?;
    let b = &f.bounded;
    let mut checks = Vec::new();
    match &f.ordering {
        Some(ordering) => {
            let report = verify_ordering(b, ordering);
            checks.push(FixtureCheck {
                check: "ordering".into(),
                pass: report.pass,
                detail: report.describe(b).join("; "),
            });
            for (label, expected) in &f.expected_c_sets {
                let chain = b.parse_top_chain(label)?;
                let got: Vec<String> = c_set(b, ordering, &chain)?.into_iter().map(|x| b.id(x).to_string()).collect();
                let mut want = expected.clone();
                want.sort();
                let mut have = got.clone();
                have.sort();
                checks.push(FixtureCheck {
                    check: format!("C({label})"),
                    pass: want == have,
                    detail: format!("expected {{{}}}, computed {{{}}}", expected.join(", "), got.join(", ")),
                });
            }
        }
        None => checks.push(FixtureCheck {
            check: "ordering".into(),
            pass: false,
            detail: "no recursive coatom ordering available".into(),
        }),
    }
    for (p, q, want) in &f.expected_mobius {
        let got = mobius(b, b.index_of(p)?, b.index_of(q)?)?;
        checks.push(FixtureCheck {
            check: format!("mu({p}, {q})"),
            pass: got == *want,
            detail: format!("expected {want}, computed {got}"),
        });
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(FixtureReport { name: f.name, pass, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(get_fixture("gamma1").unwrap().bounded.len(), 11);
        assert_eq!(get_fixture("gamma2").unwrap().bounded.len(), 8);
        assert_eq!(partition_lattice(3).len(), 5);
        assert_eq!(partition_lattice(4).len(), 15);
        assert_eq!(boolean_lattice(3).len(), 8);
        assert!(matches!(get_fixture("boolean-x"), Err(Error::UnknownFixture(_))));
        assert!(matches!(get_fixture("nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn gamma1_atoms_and_gamma2_bottom() {
        let g1 = get_fixture("gamma1").unwrap();
        assert_eq!(g1.bounded.atoms().len(), 4);
        for name in ["gamma2", "gamma7", "gamma11"] {
            let g = get_fixture(name).unwrap();
            assert!(g.bounded.is_pure().pure);
            assert_eq!(g.bounded.degree_of_poset(), 3);
            assert_eq!(g.bounded.minimal_elements().len(), 1);
        }
    }

    #[test]
    fn every_fixture_passes() {
        for name in fixture_names() {
            let report = run_fixture_assertions(&name).unwrap();
            assert!(report.pass, "{name}: {:?}", report.checks);
        }
    }
}
