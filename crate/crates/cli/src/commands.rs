use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use posetcoh::arrangement::{dij_formula, dij_table, region, IntersectionLattice};
use posetcoh::derived::{cohomology, homology, nerve_cohomology_oracle, nerve_homology_oracle};
use posetcoh::fixtures::{fixture_names, get_fixture, run_fixture_assertions, FIXTURE_FAMILIES};
use posetcoh::io::{OrderingSpec, PosetSpec};
use posetcoh::mackey::{mackey_predicts_vanishing, quasi_unit_in, verify_weak_mackey};
use posetcoh::mobius::{atom_sequence_check, mobius, verify_atomic_cohomology};
use posetcoh::shellability::{c_set, verify_ordering, OrderingFamily};
use posetcoh::stability::{check_costability, check_stability, predict_vanishing, ShellablePair};
use posetcoh::{BoundedPoset, Error, Field, GradedDims, Result, Variance};

use crate::inputs::{self, load_functor, load_poset};
use crate::{ArrangementVerb, Derived, FixtureVerb, Global, MackeyVerb, Verb};

pub struct Outcome {
    pub value: Value,
    pub pass: bool,
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome { value, pass: true }
    }

    fn of<T: Serialize>(value: &T, pass: bool) -> Self {
        Outcome { value: serde_json::to_value(value).expect("reports serialize"), pass }
    }
}

pub fn run(global: &Global, verb: &Verb) -> Result<Outcome> {
    match verb {
        Verb::Check { input } => check(global, input),
        Verb::Shell { poset } => shell(global, poset),
        Verb::Cohomology(d) => derived(global, d, Some(Variance::Contravariant), false),
        Verb::Homology(d) => derived(global, d, Some(Variance::Covariant), false),
        Verb::Oracle(d) => derived(global, d, None, true),
        Verb::Stability { functor } => stability(global, functor, Variance::Contravariant),
        Verb::Costability { functor } => stability(global, functor, Variance::Covariant),
        Verb::Mackey(m) => mackey(global, m),
        Verb::Mobius { poset, p, q } => {
            let input = load_poset(poset)?;
            let poset = &input.loaded.poset;
            let mu = mobius(poset, poset.index_of(p)?, poset.index_of(q)?)?;
            Ok(Outcome::ok(json!({"p": p, "q": q, "mobius": mu})))
        }
        Verb::Atomic { poset, at, dim } => {
            let input = load_poset(poset)?;
            let bounded = input.loaded.require_bounded()?;
            let pair = match shellable(global, bounded, input.fixture.as_deref())? {
                Ok(pair) => pair,
                Err(fail) => return Ok(fail),
            };
            let report = verify_atomic_cohomology(&pair, bounded.index_of(at)?, *dim, field(global))?;
            Ok(Outcome::of(&report, report.pass))
        }
        Verb::Atomseq { functor, atoms } => atomseq(global, functor, atoms),
        Verb::Arrangement(a) => arrangement(a),
        Verb::Fixture(f) => fixture(f),
    }
}

fn field(global: &Global) -> Field {
    global.field.unwrap_or(Field::Rational)
}

/// The validated ordering, or a failing outcome describing why none is available.
fn shellable(global: &Global, bounded: &BoundedPoset, fixture: Option<&str>) -> Result<Result<ShellablePair, Outcome>> {
    let Some(family) = inputs::ordering(global, bounded, fixture)? else {
        return Ok(Err(Outcome {
            value: json!({"pass": false, "error": "no recursive coatom ordering found"}),
            pass: false,
        }));
    };
    let report = verify_ordering(bounded, &family);
    if !report.pass {
        let value = json!({"pass": false, "error": "ordering invalid", "violations": report.describe(bounded)});
        return Ok(Err(Outcome { value, pass: false }));
    }
    Ok(Ok(ShellablePair::new(bounded.clone(), family)?))
}

fn check(global: &Global, input: &str) -> Result<Outcome> {
    let path = std::path::Path::new(input);
    let is_functor = path.is_file() && {
        let v: Value = posetcoh::io::from_json(&inputs::read_text(path)?)?;
        v.get("variance").is_some()
    };
    if !is_functor {
        let p = load_poset(input)?;
        return Ok(Outcome::ok(poset_summary(&p.loaded)));
    }
    let f = load_functor(input, global.field)?;
    let mut summary = poset_summary(&f.loaded.poset);
    let functor = &f.loaded.functor;
    summary["variance"] = json!(functor.variance());
    summary["field"] = json!(functor.field().to_string());
    summary["total_dim"] = json!(functor.dims().iter().sum::<usize>());
    if f.spec.transfers.is_some() {
        inputs::load_mackey(input, global.field)?;
        summary["transfers"] = json!(true);
    }
    Ok(Outcome::ok(summary))
}

fn poset_summary(loaded: &posetcoh::io::LoadedPoset) -> Value {
    let p = &loaded.poset;
    let mut v = json!({
        "elements": p.len(),
        "covers": p.cover_pairs().count(),
        "height": p.height(),
        "pure": p.is_pure().pure,
        "bounded": loaded.bounded.is_some(),
    });
    if let Some(b) = &loaded.bounded {
        v["bottom"] = json!(b.id(b.bottom()));
        v["top"] = json!(b.id(b.top()));
        v["degree"] = json!(b.degree_of_poset());
    }
    v
}

fn c_sets(bounded: &BoundedPoset, family: &OrderingFamily) -> Result<BTreeMap<String, Vec<String>>> {
    let mut out = BTreeMap::new();
    for chain in bounded.all_top_chains() {
        if chain.members.is_empty() || bounded.lower_covers(chain.bottom()).is_empty() {
            continue;
        }
        let set = c_set(bounded, family, &chain)?;
        out.insert(chain.label(bounded), set.into_iter().map(|x| bounded.id(x).to_string()).collect());
    }
    Ok(out)
}

fn shell(global: &Global, poset: &str) -> Result<Outcome> {
    let input = load_poset(poset)?;
    let bounded = input.loaded.require_bounded()?;
    let searched = global.ordering.is_none()
        && input.fixture.as_deref().map_or(true, |n| get_fixture(n).map_or(true, |f| f.ordering.is_none()));
    let Some(family) = inputs::ordering(global, bounded, input.fixture.as_deref())? else {
        return Ok(Outcome { value: json!({"pass": false, "searched": true, "ordering": null}), pass: false });
    };
    let report = verify_ordering(bounded, &family);
    let mut value = json!({
        "pass": report.pass,
        "searched": searched,
        "ordering": OrderingSpec::from_family(bounded, &family),
        "violations": report.describe(bounded),
    });
    if report.pass {
        value["c_sets"] = json!(c_sets(bounded, &family)?);
    }
    Ok(Outcome { value, pass: report.pass })
}

fn only_degree(dims: GradedDims, degree: Option<usize>) -> Value {
    match degree {
        Some(i) => json!({ i.to_string(): dims.get(i as i64) }),
        None => json!(dims),
    }
}

fn derived(global: &Global, d: &Derived, variance: Option<Variance>, oracle: bool) -> Result<Outcome> {
    let f = load_functor(&d.functor, global.field)?;
    let functor = &f.loaded.functor;
    if let Some(v) = variance {
        if functor.variance() != v {
            return Err(Error::VarianceMismatch {
                expected: if v == Variance::Contravariant { "contra" } else { "co" },
            });
        }
    }
    let subset = match &d.subset {
        Some(list) => inputs::ids(functor.poset(), list)?,
        None => f.loaded.poset.default_subset(),
    };
    let dims = match (functor.variance(), oracle) {
        (Variance::Contravariant, false) => cohomology(functor, &subset)?,
        (Variance::Covariant, false) => homology(functor, &subset)?,
        (Variance::Contravariant, true) => nerve_cohomology_oracle(functor, &subset)?,
        (Variance::Covariant, true) => nerve_homology_oracle(functor, &subset)?,
    };
    Ok(Outcome::ok(only_degree(dims, global.degree)))
}

fn stability(global: &Global, functor: &str, variance: Variance) -> Result<Outcome> {
    let f = load_functor(functor, global.field)?;
    let bounded = f.loaded.poset.require_bounded()?;
    let pair = match shellable(global, bounded, f.fixture.as_deref())? {
        Ok(pair) => pair,
        Err(fail) => return Ok(fail),
    };
    let functor = &f.loaded.functor;
    let check = |i| match variance {
        Variance::Contravariant => check_stability(&pair, functor, i),
        Variance::Covariant => check_costability(&pair, functor, i),
    };
    if let Some(i) = global.degree {
        let report = check(i)?;
        return Ok(Outcome::of(&report, report.pass));
    }
    if functor.variance() != variance {
        return Err(Error::VarianceMismatch {
            expected: if variance == Variance::Contravariant { "contra" } else { "co" },
        });
    }
    let d = bounded.degree_of_poset();
    let reports = (1..d).map(check).collect::<Result<Vec<_>>>()?;
    Ok(Outcome::ok(json!({
        "predicted_vanishing": predict_vanishing(&pair, functor)?,
        "reports": reports,
    })))
}

fn mackey(global: &Global, verb: &MackeyVerb) -> Result<Outcome> {
    match verb {
        MackeyVerb::Verify { input } => {
            let spec = inputs::functor_spec(input)?;
            let (loaded, data) = spec.load_mackey(global.field)?;
            let report = verify_weak_mackey(&data);
            let mut value = json!(report);
            if let (true, Some(bounded)) = (report.pass, &loaded.poset.bounded) {
                let fixture = inputs::fixture_name(&spec.poset);
                if let Ok(pair) = shellable(global, bounded, fixture)? {
                    value["predicted_vanishing"] = json!(mackey_predicts_vanishing(&pair, &data)?);
                }
            }
            Ok(Outcome { value, pass: report.pass })
        }
        MackeyVerb::QuasiUnit { input, subposet } => {
            let (loaded, data) = inputs::load_mackey(input, global.field)?;
            let q = inputs::ids(&loaded.poset.poset, subposet)?;
            let found = quasi_unit_in(&data, &q);
            let names = inputs::parse_list(subposet)?;
            Ok(Outcome { value: json!({"subposet": names, "quasi_unit": found}), pass: found })
        }
    }
}

fn atomseq(global: &Global, functor: &str, atoms: &Option<String>) -> Result<Outcome> {
    let f = load_functor(functor, global.field)?;
    let bounded = f.loaded.poset.require_bounded()?;
    let pair = match shellable(global, bounded, f.fixture.as_deref())? {
        Ok(pair) => pair,
        Err(fail) => return Ok(fail),
    };
    let atoms = match atoms {
        Some(list) => inputs::ids(bounded, list)?,
        None => bounded.atoms(),
    };
    match atom_sequence_check(&pair, &f.loaded.functor, &atoms) {
        Ok(report) => Ok(Outcome::of(&report, report.pass)),
        Err(Error::HypothesisFailed(why)) => {
            Ok(Outcome { value: json!({"pass": false, "hypothesis_failed": why}), pass: false })
        }
        Err(e) => Err(e),
    }
}

fn arrangement(verb: &ArrangementVerb) -> Result<Outcome> {
    match verb {
        ArrangementVerb::Table { input, max_i, max_j } => {
            let lattice = IntersectionLattice::new(&inputs::load_arrangement(input)?);
            let i_max = max_i.unwrap_or(lattice.degree().saturating_sub(2));
            let j_max = max_j.unwrap_or(lattice.arrangement().ambient_dim().saturating_sub(1));
            let table = dij_table(&lattice, i_max, j_max)?;
            let rows: BTreeMap<String, Vec<usize>> =
                table.into_iter().enumerate().map(|(i, row)| (i.to_string(), row)).collect();
            Ok(Outcome::ok(json!(rows)))
        }
        ArrangementVerb::Formula { input, i, j } => {
            let lattice = IntersectionLattice::new(&inputs::load_arrangement(input)?);
            let computed = dij_table(&lattice, *i, *j)?[*i][*j] as i64;
            let mut value = json!({"i": i, "j": j, "region": region(&lattice, *i, *j), "computed": computed});
            let pass = match dij_formula(&lattice, *i, *j) {
                Ok(formula) => {
                    value["formula"] = json!(formula);
                    formula == computed
                }
                Err(Error::OutOfFormulaDomain(why)) => {
                    value["formula"] = Value::Null;
                    value["note"] = json!(why);
                    true
                }
                Err(e) => return Err(e),
            };
            value["pass"] = json!(pass);
            Ok(Outcome { value, pass })
        }
        ArrangementVerb::Lattice { input, emit_poset } => {
            let lattice = IntersectionLattice::new(&inputs::load_arrangement(input)?);
            let b = lattice.bounded();
            if *emit_poset {
                return Ok(Outcome::ok(json!(PosetSpec::from_bounded(b))));
            }
            let flats: Vec<Value> = b
                .elements()
                .map(|x| {
                    let flat = lattice.flat(x);
                    json!({"id": b.id(x), "dim": flat.dim, "hyperplanes": flat.hyperplanes})
                })
                .collect();
            Ok(Outcome::ok(json!({"degree": lattice.degree(), "flats": flats})))
        }
    }
}

fn fixture(verb: &FixtureVerb) -> Result<Outcome> {
    match verb {
        FixtureVerb::List => Ok(Outcome::ok(json!({"families": FIXTURE_FAMILIES, "fixtures": fixture_names()}))),
        FixtureVerb::Show { name } => {
            let f = get_fixture(name)?;
            let b = &f.bounded;
            let mobius: Vec<Value> =
                f.expected_mobius.iter().map(|(p, q, mu)| json!({"p": p, "q": q, "mobius": mu})).collect();
            Ok(Outcome::ok(json!({
                "name": f.name,
                "poset": PosetSpec::from_bounded(b),
                "degree": b.degree_of_poset(),
                "ordering": f.ordering.as_ref().map(|o| OrderingSpec::from_family(b, o)),
                "expected_c_sets": f.expected_c_sets.iter().cloned().collect::<BTreeMap<_, _>>(),
                "expected_mobius": mobius,
            })))
        }
        FixtureVerb::Assert { name } => {
            let report = run_fixture_assertions(name)?;
            Ok(Outcome::of(&report, report.pass))
        }
    }
}
