//! Recursive coatom orderings, the sets `C(c)`, and the dual CL-shellability axioms.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::poset::{BoundedPoset, Chain, Poset};

/// A total order `⊑_c` of the coatoms of `c_0` for every unrefinable `1̂`-chain `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderingFamily {
    /// One priority list restricted to each `P_{≺c_0}`. Elements absent from the
    /// list come after the listed ones, in index order.
    Global(Vec<usize>),
    /// An order per chain, keyed by the chain members `c_0, ..., 1̂`.
    Explicit(BTreeMap<Vec<usize>, Vec<usize>>),
}

impl OrderingFamily {
    pub fn global_from_ids<S: AsRef<str>>(poset: &Poset, ids: &[S]) -> Result<Self> {
        Ok(OrderingFamily::Global(poset.indices_of(ids)?))
    }

    /// The order `⊑_c` as a list of the coatoms of `c_0`.
    pub fn order(&self, poset: &Poset, chain: &[usize]) -> Result<Vec<usize>> {
        let c0 = chain[0];
        let coatoms = poset.lower_covers(c0);
        match self {
            OrderingFamily::Global(list) => {
                let mut out: Vec<usize> = list.iter().copied().filter(|x| coatoms.contains(x)).collect();
                out.dedup();
                for &x in coatoms {
                    if !out.contains(&x) {
                        out.push(x);
                    }
                }
                Ok(out)
            }
            OrderingFamily::Explicit(map) => {
                if coatoms.is_empty() {
                    return Ok(Vec::new());
                }
                let order = map.get(chain).ok_or_else(|| {
                    Error::OrderingInvalid(format!("no order given for chain {}", label(poset, chain)))
                })?;
                let mut sorted = order.clone();
                sorted.sort_unstable();
                if sorted != coatoms {
                    return Err(Error::OrderingInvalid(format!(
                        "order for chain {} is not a permutation of the coatoms of {}",
                        label(poset, chain),
                        poset.id(c0)
                    )));
                }
                Ok(order.clone())
            }
        }
    }

    /// Materializes the family as explicit per-chain orders.
    pub fn to_explicit(&self, poset: &BoundedPoset) -> Result<OrderingFamily> {
        let mut map = BTreeMap::new();
        for c in poset.all_top_chains() {
            if !poset.lower_covers(c.bottom()).is_empty() {
                map.insert(c.members.clone(), self.order(poset, &c.members)?);
            }
        }
        Ok(OrderingFamily::Explicit(map))
    }
}

fn label(poset: &Poset, chain: &[usize]) -> String {
    chain.iter().map(|&m| poset.id(m)).collect::<Vec<_>>().join("<")
}

/// `C(c) = {x ≺ c_0 | x < h ≺ c_1 for some h strictly before c_0 in ⊑_{c'}}`,
/// with `c'` the tail of `c`; empty for the length-zero chain. Sorted by index.
pub fn c_set(poset: &BoundedPoset, family: &OrderingFamily, chain: &Chain) -> Result<Vec<usize>> {
    let chain = poset.top_chain(chain.members.clone())?;
    if chain.is_empty() {
        return Ok(Vec::new());
    }
    let c0 = chain.bottom();
    let tail = &chain.members[1..];
    let parent_order = family.order(poset, tail)?;
    let pos = parent_order.iter().position(|&h| h == c0).expect("c_0 is a coatom of c_1");
    let earlier = &parent_order[..pos];
    Ok(poset.lower_covers(c0).iter().copied().filter(|&x| earlier.iter().any(|&h| poset.lt(x, h))).collect())
}

/// CL1 failure: `element ∈ C(c)` comes after `preceded_by ∉ C(c)` in `⊑_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cl1Violation {
    pub chain: Chain,
    pub element: usize,
    pub preceded_by: usize,
}

/// CL2 failure: `h' ≪_c h`, `p < h, h'`, and no `h'' ≪_c h`, `q ≺ h` with `p ≤ q < h''`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cl2Violation {
    pub chain: Chain,
    pub h_prime: usize,
    pub h: usize,
    pub p: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellabilityReport {
    pub pass: bool,
    pub cl1: Vec<Cl1Violation>,
    pub cl2: Vec<Cl2Violation>,
    /// Chains for which the family supplies no valid order.
    pub malformed: Vec<String>,
}

impl ShellabilityReport {
    pub fn describe(&self, poset: &Poset) -> Vec<String> {
        let mut out = self.malformed.clone();
        for v in &self.cl1 {
            out.push(format!(
                "CL1 at {}: {} in C(c) comes after {}",
                v.chain.label(poset),
                poset.id(v.element),
                poset.id(v.preceded_by)
            ));
        }
        for v in &self.cl2 {
            out.push(format!(
                "CL2 at {}: {} before {}, common lower bound {} has no witness",
                v.chain.label(poset),
                poset.id(v.h_prime),
                poset.id(v.h),
                poset.id(v.p)
            ));
        }
        out
    }
}

/// Checks CL1 and CL2 for every unrefinable `1̂`-chain. CL0 is vacuous for finite posets.
pub fn verify_ordering(poset: &BoundedPoset, family: &OrderingFamily) -> ShellabilityReport {
    let mut cl1 = Vec::new();
    let mut cl2 = Vec::new();
    let mut malformed = Vec::new();
    for chain in poset.all_top_chains() {
        if poset.lower_covers(chain.bottom()).is_empty() {
            continue;
        }
        let order = match family.order(poset, &chain.members) {
            Ok(o) => o,
            Err(e) => {
                malformed.push(e.to_string());
                continue;
            }
        };
        let c = match c_set(poset, family, &chain) {
            Ok(c) => c,
            Err(e) => {
                malformed.push(e.to_string());
                continue;
            }
        };
        if let Some(v) = cl1_violation(&order, &c) {
            cl1.push(Cl1Violation { chain: chain.clone(), element: v.0, preceded_by: v.1 });
        }
        for (j, &h) in order.iter().enumerate() {
            if let Some((h_prime, p)) = cl2_violation(poset, &order[..j], h) {
                cl2.push(Cl2Violation { chain: chain.clone(), h_prime, h, p });
            }
        }
    }
    let pass = cl1.is_empty() && cl2.is_empty() && malformed.is_empty();
    ShellabilityReport { pass, cl1, cl2, malformed }
}

/// First member of `c` that is preceded by a non-member.
fn cl1_violation(order: &[usize], c: &[usize]) -> Option<(usize, usize)> {
    let mut outsider = None;
    for &x in order {
        if c.contains(&x) {
            if let Some(o) = outsider {
                return Some((x, o));
            }
        } else if outsider.is_none() {
            outsider = Some(x);
        }
    }
    None
}

/// CL2 for a fixed `h` given the elements `before` it.
fn cl2_violation(poset: &Poset, before: &[usize], h: usize) -> Option<(usize, usize)> {
    for &h_prime in before {
        for p in poset.elements() {
            if !(poset.lt(p, h) && poset.lt(p, h_prime)) {
                continue;
            }
            let ok = before.iter().any(|&h2| poset.lower_covers(h).iter().any(|&q| poset.leq(p, q) && poset.lt(q, h2)));
            if !ok {
                return Some((h_prime, p));
            }
        }
    }
    None
}

/// Necessary condition for dual CL-shellability: for every `p`, the elements of
/// codegree 1 or 2 that lie above or at `p` form a connected subposet.
/// Returns the first `p` where this fails.
pub fn final_subposet_obstruction(poset: &BoundedPoset) -> Option<usize> {
    poset.elements().find(|&p| {
        let q: Vec<usize> =
            poset.elements().filter(|&x| poset.leq(p, x) && matches!(poset.codegree(x), 1 | 2)).collect();
        !poset.is_connected(&q)
    })
}

/// Search limits for [`find_ordering`].
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Maximum number of partial-order extension steps before giving up.
    pub budget: usize,
    /// Reject early when [`final_subposet_obstruction`] fires.
    pub prefilter: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 2_000_000, prefilter: true }
    }
}

/// Searches for a recursive coatom ordering.
///
/// The subtree of constraints below a chain `c` depends only on `(c_0, C(c))`,
/// so feasibility is memoized on that pair. Orders are tried in lexicographic
/// order of element index with `C(c)` placed first; CL2 is checked incrementally
/// and each child's `C` set is resolved as soon as the child is placed.
pub fn find_ordering(poset: &BoundedPoset, options: SearchOptions) -> Result<Option<OrderingFamily>> {
    if options.prefilter && final_subposet_obstruction(poset).is_some() {
        return Ok(None);
    }
    let mut search = Search { poset, memo: HashMap::new(), steps: 0, budget: options.budget };
    if !search.feasible(poset.top(), Vec::new())? {
        return Ok(None);
    }
    // Replay the memoized choices down every chain.
    let mut map = BTreeMap::new();
    let mut stack: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![poset.top()], Vec::new())];
    while let Some((chain, c)) = stack.pop() {
        let c0 = chain[0];
        if poset.lower_covers(c0).is_empty() {
            continue;
        }
        let order = search.memo[&(c0, c.clone())].clone().expect("feasible node has an order");
        for (k, &x) in order.iter().enumerate() {
            let child_c = child_c_set(poset, &order[..k], x);
            let mut child = vec![x];
            child.extend_from_slice(&chain);
            stack.push((child, child_c));
        }
        map.insert(chain, order);
    }
    Ok(Some(OrderingFamily::Explicit(map)))
}

fn child_c_set(poset: &Poset, before: &[usize], x: usize) -> Vec<usize> {
    poset.lower_covers(x).iter().copied().filter(|&y| before.iter().any(|&h| poset.lt(y, h))).collect()
}

struct Search<'a> {
    poset: &'a BoundedPoset,
    memo: HashMap<(usize, Vec<usize>), Option<Vec<usize>>>,
    steps: usize,
    budget: usize,
}

impl Search<'_> {
    fn feasible(&mut self, c0: usize, c: Vec<usize>) -> Result<bool> {
        if self.poset.lower_covers(c0).is_empty() {
            return Ok(true);
        }
        if let Some(found) = self.memo.get(&(c0, c.clone())) {
            return Ok(found.is_some());
        }
        let coatoms = self.poset.lower_covers(c0).to_vec();
        let rest: Vec<usize> = coatoms.iter().copied().filter(|x| !c.contains(x)).collect();
        let mut prefix = Vec::with_capacity(coatoms.len());
        let found = self.extend(&c, &rest, &mut prefix)?;
        let result = found.then(|| prefix.clone());
        self.memo.insert((c0, c), result);
        Ok(found)
    }

    fn extend(&mut self, c: &[usize], rest: &[usize], prefix: &mut Vec<usize>) -> Result<bool> {
        let in_c = prefix.len() < c.len();
        let pool = if in_c { c } else { rest };
        if prefix.len() == c.len() + rest.len() {
            return Ok(true);
        }
        for &x in pool {
            if prefix.contains(&x) {
                continue;
            }
            self.steps += 1;
            if self.steps > self.budget {
                return Err(Error::SizeGuardExceeded(format!("more than {} search steps", self.budget)));
            }
            if cl2_violation(self.poset, prefix, x).is_some() {
                continue;
            }
            let child_c = child_c_set(self.poset, prefix, x);
            if !self.feasible(x, child_c)? {
                continue;
            }
            prefix.push(x);
            if self.extend(c, rest, prefix)? {
                return Ok(true);
            }
            prefix.pop();
        }
        Ok(false)
    }
}

/// Whether `q ⊆ P_{≺p}` is an initial segment of `⊑_c` for some chain `c` with
/// `c_0 = p`; returns the first such chain.
pub fn is_compatible(poset: &BoundedPoset, family: &OrderingFamily, p: usize, q: &[usize]) -> Result<Option<Chain>> {
    if let Some(&x) = q.iter().find(|&&x| !poset.covers(x, p)) {
        return Err(Error::NotCoatomOf { q: poset.id(x).into(), p: poset.id(p).into() });
    }
    let length = |c: &Chain| c.len();
    let mut chains: Vec<Chain> = poset.all_top_chains().into_iter().filter(|c| c.bottom() == p).collect();
    chains.sort_by_key(length);
    for c in chains {
        let order = family.order(poset, &c.members)?;
        let mut head = order[..q.len().min(order.len())].to_vec();
        head.sort_unstable();
        let mut want = q.to_vec();
        want.sort_unstable();
        want.dedup();
        if head == want {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// The bounded poset `⟨Q⟩ ∪ {p}` with the inherited family: `⊑'_{c'}` is the
/// restriction of `⊑_{c'≺c}` where `c` is a chain witnessing compatibility.
/// Returns the subposet, its family, and the index map into `poset`.
pub fn restrict_to_compatible(
    poset: &BoundedPoset,
    family: &OrderingFamily,
    p: usize,
    q: &[usize],
    witness: &Chain,
) -> Result<(BoundedPoset, OrderingFamily, Vec<usize>)> {
    let mut elements = poset.lower_set(q);
    if !elements.contains(&p) {
        elements.push(p);
    }
    let (sub, map) = poset.induced_bounded(&elements)?;
    let mut orders = BTreeMap::new();
    for c in sub.all_top_chains() {
        let c0 = c.bottom();
        if sub.lower_covers(c0).is_empty() {
            continue;
        }
        let mut full: Vec<usize> = c.members.iter().map(|&i| map[i]).collect();
        full.extend_from_slice(&witness.members[1..]);
        let order = family.order(poset, &full)?;
        let local: HashMap<usize, usize> = map.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let restricted: Vec<usize> =
            order.into_iter().filter_map(|g| local.get(&g).copied()).filter(|&i| sub.covers(i, c0)).collect();
        orders.insert(c.members.clone(), restricted);
    }
    Ok((sub, OrderingFamily::Explicit(orders), map))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bounded(ids: &[&str], covers: &[(&str, &str)]) -> BoundedPoset {
        BoundedPoset::new(Poset::new(ids, covers).unwrap()).unwrap()
    }

    fn b3() -> BoundedPoset {
        bounded(
            &["0", "a", "b", "c", "ab", "ac", "bc", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("0", "c"),
                ("a", "ab"),
                ("a", "ac"),
                ("b", "ab"),
                ("b", "bc"),
                ("c", "ac"),
                ("c", "bc"),
                ("ab", "1"),
                ("ac", "1"),
                ("bc", "1"),
            ],
        )
    }

    #[test]
    fn c_set_of_top_chain_is_empty() {
        let p = b3();
        let fam = OrderingFamily::Global(vec![]);
        let top = p.top_chain(vec![p.top()]).unwrap();
        assert!(c_set(&p, &fam, &top).unwrap().is_empty());
    }

    #[test]
    fn chain_poset_is_shellable() {
        let p = bounded(&["0", "x", "1"], &[("0", "x"), ("x", "1")]);
        assert!(verify_ordering(&p, &OrderingFamily::Global(vec![])).pass);
    }

    #[test]
    fn b3_index_order_passes_and_some_order_fails() {
        let p = b3();
        assert!(verify_ordering(&p, &OrderingFamily::Global(vec![])).pass);
        // C(ac) = {a}, but c is put first.
        let bad = OrderingFamily::Global(p.indices_of(&["ab", "ac", "bc", "c", "a", "b"]).unwrap());
        let report = verify_ordering(&p, &bad);
        assert!(!report.pass);
        assert!(!report.cl1.is_empty());
    }

    #[test]
    fn search_finds_orderings() {
        let p = b3();
        let fam = find_ordering(&p, SearchOptions::default()).unwrap().unwrap();
        assert!(verify_ordering(&p, &fam).pass);
        let b2 = bounded(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]);
        assert!(find_ordering(&b2, SearchOptions::default()).unwrap().is_some());
    }

    #[test]
    fn bowtie_is_not_shellable() {
        let p = bounded(
            &["0", "a1", "a2", "b1", "b2", "1"],
            &[("0", "a1"), ("a1", "a2"), ("a2", "1"), ("0", "b1"), ("b1", "b2"), ("b2", "1")],
        );
        assert!(final_subposet_obstruction(&p).is_some());
        let no_filter = SearchOptions { prefilter: false, ..SearchOptions::default() };
        assert!(find_ordering(&p, no_filter).unwrap().is_none());
        assert!(find_ordering(&p, SearchOptions::default()).unwrap().is_none());
    }

    #[test]
    fn compatibility_and_restriction() {
        let p = b3();
        let fam = OrderingFamily::Global(vec![]);
        let top = p.top();
        assert!(is_compatible(&p, &fam, top, &[]).unwrap().is_some());
        let all = p.coatoms();
        assert!(is_compatible(&p, &fam, top, &all).unwrap().is_some());
        let ab = p.index_of("ab").unwrap();
        let ac = p.index_of("ac").unwrap();
        let bc = p.index_of("bc").unwrap();
        let w = is_compatible(&p, &fam, top, &[ab, ac]).unwrap().unwrap();
        assert!(is_compatible(&p, &fam, top, &[bc]).unwrap().is_none());
        let (sub, sub_fam, _) = restrict_to_compatible(&p, &fam, top, &[ab, ac], &w).unwrap();
        assert_eq!(sub.len(), 7);
        assert!(verify_ordering(&sub, &sub_fam).pass);
        assert!(matches!(is_compatible(&p, &fam, top, &[0]), Err(Error::NotCoatomOf { .. })));
    }
}
