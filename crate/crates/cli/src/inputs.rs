use std::path::Path;

use posetcoh::fixtures::get_fixture;
use posetcoh::io::{from_json, ArrangementSpec, FunctorSpec, LoadedFunctor, LoadedPoset, OrderingSpec, PosetRef};
use posetcoh::mackey::MackeyData;
use posetcoh::shellability::{find_ordering, OrderingFamily, SearchOptions};
use posetcoh::{BoundedPoset, Error, Field, Poset, Result};

use crate::Global;

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

/// A JSON file when the path exists, otherwise a fixture name.
pub fn poset_ref(arg: &str) -> Result<PosetRef> {
    let path = Path::new(arg);
    if path.is_file() {
        from_json(&read_text(path)?)
    } else {
        get_fixture(arg)?;
        Ok(PosetRef::Fixture(arg.to_string()))
    }
}

pub fn fixture_name(r: &PosetRef) -> Option<&str> {
    match r {
        PosetRef::Fixture(name) => Some(name),
        PosetRef::Inline(_) => None,
    }
}

pub struct PosetInput {
    pub loaded: LoadedPoset,
    pub fixture: Option<String>,
}

pub fn load_poset(arg: &str) -> Result<PosetInput> {
    let r = poset_ref(arg)?;
    Ok(PosetInput { loaded: r.load()?, fixture: fixture_name(&r).map(str::to_string) })
}

pub struct FunctorInput {
    pub spec: FunctorSpec,
    pub loaded: LoadedFunctor,
    pub fixture: Option<String>,
}

pub fn functor_spec(arg: &str) -> Result<FunctorSpec> {
    from_json(&read_text(Path::new(arg))?)
}

pub fn load_functor(arg: &str, field: Option<Field>) -> Result<FunctorInput> {
    let spec = functor_spec(arg)?;
    let loaded = spec.load(field)?;
    let fixture = fixture_name(&spec.poset).map(str::to_string);
    Ok(FunctorInput { spec, loaded, fixture })
}

pub fn load_mackey(arg: &str, field: Option<Field>) -> Result<(LoadedFunctor, MackeyData)> {
    functor_spec(arg)?.load_mackey(field)
}

pub fn load_arrangement(arg: &str) -> Result<posetcoh::arrangement::Arrangement> {
    from_json::<ArrangementSpec>(&read_text(Path::new(arg))?)?.build()
}

/// `--ordering` first, then the fixture's own ordering, then a search.
pub fn ordering(global: &Global, bounded: &BoundedPoset, fixture: Option<&str>) -> Result<Option<OrderingFamily>> {
    if let Some(path) = &global.ordering {
        return from_json::<OrderingSpec>(&read_text(path)?)?.build(bounded).map(Some);
    }
    if let Some(name) = fixture {
        if let Some(o) = get_fixture(name)?.ordering {
            return Ok(Some(o));
        }
    }
    find_ordering(bounded, SearchOptions::default())
}

/// Parses a JSON array of ids, or a comma list that keeps commas inside braces.
pub fn parse_list(text: &str) -> Result<Vec<String>> {
    let text = text.trim();
    if text.starts_with('[') {
        return from_json(text);
    }
    let mut items = Vec::new();
    let mut current = String::new();
    let mut depth = 0i32;
    for ch in text.chars() {
        match ch {
            '{' | '(' => depth += 1,
            '}' | ')' => depth -= 1,
            ',' if depth == 0 => {
                items.push(std::mem::take(&mut current).trim().to_string());
                continue;
            }
            _ => {}
        }
        current.push(ch);
    }
    if !current.trim().is_empty() || !items.is_empty() {
        items.push(current.trim().to_string());
    }
    Ok(items)
}

pub fn ids(poset: &Poset, list: &str) -> Result<Vec<usize>> {
    poset.indices_of(&parse_list(list)?)
}

#[cfg(test)]
mod tests {
    use super::parse_list;

    #[test]
    fn lists_keep_braced_commas() {
        assert_eq!(parse_list("{1},{1,2}, x").unwrap(), ["{1}", "{1,2}", "x"]);
        assert_eq!(parse_list(r#"["a,m","s,v"]"#).unwrap(), ["a,m", "s,v"]);
        assert!(parse_list("").unwrap().is_empty());
    }
}
