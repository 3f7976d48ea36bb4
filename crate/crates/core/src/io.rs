//! JSON input and output formats.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::fixtures::get_fixture;
use crate::functor::{FunctorOnPoset, Variance};
use crate::linalg::{Field, Matrix, Scalar};
use crate::mackey::MackeyData;
use crate::poset::{BoundedPoset, Poset};
use crate::shellability::OrderingFamily;

/// A scalar literal: an integer or a string `"a"` / `"a/b"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarLiteral {
    Int(i64),
    Text(String),
}

impl ScalarLiteral {
    pub fn parse(&self, field: Field) -> Result<Scalar> {
        match self {
            ScalarLiteral::Int(n) => Ok(field.from_i64(*n)),
            ScalarLiteral::Text(s) => field.parse_scalar(s),
        }
    }
}

impl From<&Scalar> for ScalarLiteral {
    fn from(s: &Scalar) -> Self {
        ScalarLiteral::Text(s.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<String>,
}

impl PosetSpec {
    pub fn from_poset(poset: &Poset) -> Self {
        let covers = poset.cover_pairs().map(|(q, p)| (poset.id(q).to_string(), poset.id(p).to_string())).collect();
        PosetSpec { elements: poset.ids().to_vec(), covers, bottom: None, top: None }
    }

    pub fn from_bounded(b: &BoundedPoset) -> Self {
        PosetSpec {
            bottom: Some(b.id(b.bottom()).to_string()),
            top: Some(b.id(b.top()).to_string()),
            ..Self::from_poset(b.poset())
        }
    }

    pub fn build(&self) -> Result<Poset> {
        Poset::new(&self.elements, &self.covers)
    }

    /// Uses the explicit bounds when present, otherwise infers them.
    pub fn build_bounded(&self) -> Result<BoundedPoset> {
        let poset = self.build()?;
        match (&self.bottom, &self.top) {
            (Some(b), Some(t)) => BoundedPoset::with_bounds(poset, b, t),
            (None, None) => BoundedPoset::new(poset),
            (b, t) => {
                let inferred = BoundedPoset::new(poset.clone())?;
                let b = b.clone().unwrap_or_else(|| inferred.id(inferred.bottom()).to_string());
                let t = t.clone().unwrap_or_else(|| inferred.id(inferred.top()).to_string());
                BoundedPoset::with_bounds(poset, &b, &t)
            }
        }
    }
}

/// An inline poset or the name of a built-in fixture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PosetRef {
    Fixture(String),
    Inline(PosetSpec),
}

/// A poset that may or may not be bounded.
#[derive(Clone, Debug)]
pub struct LoadedPoset {
    pub poset: Arc<Poset>,
    pub bounded: Option<BoundedPoset>,
}

impl LoadedPoset {
    pub fn require_bounded(&self) -> Result<&BoundedPoset> {
        self.bounded.as_ref().ok_or_else(|| Error::NotBounded("the input poset needs a bottom and a top".into()))
    }

    /// `P ∖ {1̂}` when a top exists, otherwise all of `P`.
    pub fn default_subset(&self) -> Vec<usize> {
        match &self.bounded {
            Some(b) => b.without_top(),
            None => self.poset.elements().collect(),
        }
    }
}

impl PosetRef {
    pub fn load(&self) -> Result<LoadedPoset> {
        match self {
            PosetRef::Fixture(name) => {
                let f = get_fixture(name)?;
                Ok(LoadedPoset { poset: Arc::new(f.bounded.poset().clone()), bounded: Some(f.bounded) })
            }
            PosetRef::Inline(spec) => {
                let poset = spec.build()?;
                let explicit = spec.bottom.is_some() || spec.top.is_some();
                let bounded = match spec.build_bounded() {
                    Ok(b) => Some(b),
                    Err(e) if explicit => return Err(e),
                    Err(_) => None,
                };
                Ok(LoadedPoset { poset: Arc::new(poset), bounded })
            }
        }
    }
}

pub type MatrixLiteral = Vec<Vec<ScalarLiteral>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorSpec {
    pub poset: PosetRef,
    pub variance: Variance,
    #[serde(default = "default_field")]
    pub field: String,
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, MatrixLiteral>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transfers: Option<BTreeMap<String, MatrixLiteral>>,
}

fn default_field() -> String {
    "Q".into()
}

#[derive(Clone, Debug)]
pub struct LoadedFunctor {
    pub poset: LoadedPoset,
    pub functor: FunctorOnPoset,
}

/// Splits a `"q<p"` key into two known elements.
pub fn parse_pair(poset: &Poset, key: &str) -> Result<(usize, usize)> {
    let (q, p) = key.split_once('<').ok_or_else(|| Error::InvalidInput(format!("`{key}` is not of the form q<p")))?;
    Ok((poset.index_of(q.trim())?, poset.index_of(p.trim())?))
}

/// Parses a row-major literal of the given shape.
pub fn parse_matrix(field: Field, rows: usize, cols: usize, lit: &MatrixLiteral, context: &str) -> Result<Matrix> {
    let found_cols = lit.first().map_or(cols, Vec::len);
    if lit.len() != rows || lit.iter().any(|r| r.len() != found_cols) || found_cols != cols {
        // An empty literal stands for any matrix with a zero dimension.
        if lit.is_empty() && (rows == 0 || cols == 0) {
            return Ok(Matrix::zeros(field, rows, cols));
        }
        return Err(Error::ShapeMismatch {
            context: context.to_string(),
            expected: (rows, cols),
            found: (lit.len(), found_cols),
        });
    }
    let parsed =
        lit.iter().map(|r| r.iter().map(|s| s.parse(field)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, cols, parsed)
}

impl FunctorSpec {
    /// `field` overrides the field stated in the file.
    pub fn load(&self, field: Option<Field>) -> Result<LoadedFunctor> {
        let field = match field {
            Some(f) => f,
            None => self.field.parse()?,
        };
        let loaded = self.poset.load()?;
        let poset = &loaded.poset;
        let mut dims = vec![0; poset.len()];
        for (id, &d) in &self.dims {
            dims[poset.index_of(id)?] = d;
        }
        let mut maps = HashMap::new();
        for (key, lit) in &self.maps {
            let (q, p) = parse_pair(poset, key)?;
            if !poset.covers(q, p) {
                return Err(Error::InvalidInput(format!("`{key}` is not a cover; give cover maps only")));
            }
            let (r, c) = match self.variance {
                Variance::Contravariant => (dims[q], dims[p]),
                Variance::Covariant => (dims[p], dims[q]),
            };
            maps.insert((q, p), parse_matrix(field, r, c, lit, &format!("map {key}"))?);
        }
        let functor = FunctorOnPoset::new(poset.clone(), self.variance, field, dims, maps)?;
        Ok(LoadedFunctor { poset: loaded, functor })
    }

    /// Loads the functor together with its transfers.
    pub fn load_mackey(&self, field: Option<Field>) -> Result<(LoadedFunctor, MackeyData)> {
        let loaded = self.load(field)?;
        let g = &loaded.functor;
        let poset = g.poset();
        let mut transfers = HashMap::new();
        for (key, lit) in self.transfers.iter().flatten() {
            let (j, i) = parse_pair(poset, key)?;
            let m = parse_matrix(g.field(), g.dim(i), g.dim(j), lit, &format!("transfer {key}"))?;
            transfers.insert((j, i), m);
        }
        let data = MackeyData::new(g.clone(), transfers)?;
        Ok((loaded, data))
    }

    pub fn from_functor(f: &FunctorOnPoset, poset: PosetRef) -> Self {
        let p = f.poset();
        let dims = p.elements().filter(|&x| f.dim(x) > 0).map(|x| (p.id(x).to_string(), f.dim(x))).collect();
        let maps = p
            .cover_pairs()
            .filter(|&(q, r)| f.dim(q) > 0 && f.dim(r) > 0)
            .map(|(q, r)| (format!("{}<{}", p.id(q), p.id(r)), matrix_literal(f.map(q, r))))
            .collect();
        FunctorSpec { poset, variance: f.variance(), field: f.field().to_string(), dims, maps, transfers: None }
    }
}

pub fn matrix_literal(m: &Matrix) -> MatrixLiteral {
    (0..m.rows()).map(|r| m.row(r).iter().map(ScalarLiteral::from).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrderingSpec {
    Global { global: Vec<String> },
    Chains { chains: BTreeMap<String, Vec<String>> },
}

impl OrderingSpec {
    pub fn build(&self, bounded: &BoundedPoset) -> Result<OrderingFamily> {
        match self {
            OrderingSpec::Global { global } => OrderingFamily::global_from_ids(bounded, global),
            OrderingSpec::Chains { chains } => {
                let mut map = BTreeMap::new();
                for (label, ids) in chains {
                    let chain = bounded.parse_top_chain(label)?;
                    map.insert(chain.members.clone(), bounded.indices_of(ids)?);
                }
                Ok(OrderingFamily::Explicit(map))
            }
        }
    }

    pub fn from_family(bounded: &BoundedPoset, family: &OrderingFamily) -> Self {
        let names = |v: &[usize]| v.iter().map(|&x| bounded.id(x).to_string()).collect();
        match family {
            OrderingFamily::Global(v) => OrderingSpec::Global { global: names(v) },
            OrderingFamily::Explicit(m) => {
                OrderingSpec::Chains { chains: m.iter().map(|(c, v)| (label(bounded, c), names(v))).collect() }
            }
        }
    }
}

fn label(poset: &Poset, members: &[usize]) -> String {
    members.iter().map(|&x| poset.id(x)).collect::<Vec<_>>().join("<")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementSpec {
    pub ambient_dim: usize,
    pub hyperplanes: Vec<Vec<ScalarLiteral>>,
}

impl ArrangementSpec {
    pub fn build(&self) -> Result<Arrangement> {
        let normals = self
            .hyperplanes
            .iter()
            .map(|h| h.iter().map(|s| s.parse(Field::Rational)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(self.ambient_dim, normals)
    }
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}
