//! Finite posets given by their cover relation.

use std::collections::{HashMap, VecDeque};
use std::ops::Deref;

use crate::error::{Error, Result};

/// Finite poset on opaque string ids.
///
/// Elements are addressed by their index in insertion order. The order relation is
/// the reflexive-transitive closure of the covers and is cached at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
    degree: Vec<usize>,
}

/// A strictly increasing sequence `c_0 < c_1 < ... < c_n` of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub members: Vec<usize>,
    /// Every consecutive pair is a cover.
    pub unrefinable: bool,
}

impl Chain {
    /// Number of steps, one less than the number of members.
    pub fn len(&self) -> usize {
        self.members.len().saturating_sub(1)
    }

    /// True for a chain with no steps.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The smallest member `c_0`.
    pub fn bottom(&self) -> usize {
        self.members[0]
    }

    /// The chain with `c_0` removed.
    pub fn tail(&self) -> Chain {
        Chain { members: self.members[1..].to_vec(), unrefinable: self.unrefinable }
    }

    /// `"c0<c1<...<cn"` using element ids.
    pub fn label(&self, poset: &Poset) -> String {
        self.members.iter().map(|&m| poset.id(m)).collect::<Vec<_>>().join("<")
    }
}

/// Outcome of a purity test; on failure, two maximal chains of different length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Purity {
    pub pure: bool,
    pub witness: Option<(Chain, Chain)>,
}

impl Poset {
    /// Validates a cover relation and builds the poset.
    ///
    /// Rejects duplicate ids, unknown ids, cycles and pairs that are not covers
    /// (some `r` with `q < r < p`). Repeated cover pairs are merged.
    #[allow(clippy::needless_range_loop)]
    pub fn new<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let ids: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateElement(id.clone()));
            }
        }
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownElement(s.to_string()));
        let n = ids.len();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for (q, p) in covers {
            let (q, p) = (lookup(q.as_ref())?, lookup(p.as_ref())?);
            if q == p {
                return Err(Error::CycleDetected(ids[q].clone()));
            }
            if !up[q].contains(&p) {
                up[q].push(p);
                down[p].push(q);
            }
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort_unstable();
        }
        let order = topological_order(&up, &down).map_err(|i| Error::CycleDetected(ids[i].clone()))?;

        // Closure in reverse topological order: everything above p.
        let mut leq = vec![vec![false; n]; n];
        for &p in order.iter().rev() {
            leq[p][p] = true;
            for &r in &up[p] {
                for x in 0..n {
                    if leq[r][x] {
                        leq[p][x] = true;
                    }
                }
            }
        }
        for q in 0..n {
            for &p in &up[q] {
                if let Some(r) = (0..n).find(|&r| r != q && r != p && leq[q][r] && leq[r][p]) {
                    return Err(Error::NonCoverPair { q: ids[q].clone(), p: ids[p].clone(), r: ids[r].clone() });
                }
            }
        }
        let mut degree = vec![0; n];
        for &p in &order {
            degree[p] = down[p].iter().map(|&q| degree[q] + 1).max().unwrap_or(0);
        }
        Ok(Poset { ids, index, up, down, leq, degree })
    }

    /// Builds the poset on `elements` generated by an arbitrary (acyclic) relation,
    /// keeping only the covers of its transitive closure.
    pub fn from_relation<S: AsRef<str>>(elements: &[S], relation: &[(S, S)]) -> Result<Self> {
        let full = Poset::new_unchecked_closure(elements, relation)?;
        let covers: Vec<(String, String)> =
            full.cover_pairs().map(|(q, p)| (full.id(q).to_string(), full.id(p).to_string())).collect();
        let ids: Vec<&str> = full.ids.iter().map(String::as_str).collect();
        let covers: Vec<(&str, &str)> = covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Poset::new(&ids, &covers)
    }

    #[allow(clippy::needless_range_loop)]
    fn new_unchecked_closure<S: AsRef<str>>(elements: &[S], relation: &[(S, S)]) -> Result<Self> {
        let ids: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let n = ids.len();
        let mut index = HashMap::new();
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateElement(id.clone()));
            }
        }
        let mut lt = vec![vec![false; n]; n];
        for (a, b) in relation {
            let a = *index.get(a.as_ref()).ok_or_else(|| Error::UnknownElement(a.as_ref().into()))?;
            let b = *index.get(b.as_ref()).ok_or_else(|| Error::UnknownElement(b.as_ref().into()))?;
            lt[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if lt[i][k] {
                    for j in 0..n {
                        if lt[k][j] {
                            lt[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| lt[i][i]) {
            return Err(Error::CycleDetected(ids[i].clone()));
        }
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for q in 0..n {
            for p in 0..n {
                if lt[q][p] && !(0..n).any(|r| lt[q][r] && lt[r][p]) {
                    up[q].push(p);
                    down[p].push(q);
                }
            }
        }
        let leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || lt[i][j]).collect()).collect();
        Ok(Poset { ids, index, up, down, leq, degree: vec![0; n] })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, p: usize) -> &str {
        &self.ids[p]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<usize>> {
        ids.iter().map(|s| self.index_of(s.as_ref())).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq[a][b] || self.leq[b][a]
    }

    /// `a ≺ b`.
    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.up[a].binary_search(&b).is_ok()
    }

    /// Elements covering `p`.
    pub fn upper_covers(&self, p: usize) -> &[usize] {
        &self.up[p]
    }

    /// Elements covered by `p`, i.e. `P_{≺p}`.
    pub fn lower_covers(&self, p: usize) -> &[usize] {
        &self.down[p]
    }

    /// All cover pairs `(q, p)` with `q ≺ p`, ordered by `q` then `p`.
    pub fn cover_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up.iter().enumerate().flat_map(|(q, ps)| ps.iter().map(move |&p| (q, p)))
    }

    /// `P_{<p}` in index order.
    pub fn below(&self, p: usize) -> Vec<usize> {
        self.elements().filter(|&q| self.lt(q, p)).collect()
    }

    /// `P_{>p}` in index order.
    pub fn above(&self, p: usize) -> Vec<usize> {
        self.elements().filter(|&q| self.lt(p, q)).collect()
    }

    /// Length of the longest chain ending at `p`.
    pub fn degree(&self, p: usize) -> usize {
        self.degree[p]
    }

    /// `d(P)`, the maximum degree (0 for the empty poset).
    pub fn height(&self) -> usize {
        self.degree.iter().copied().max().unwrap_or(0)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        self.elements().filter(|&p| self.down[p].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        self.elements().filter(|&p| self.up[p].is_empty()).collect()
    }

    /// Indices sorted by degree, ties by index. Every element appears after all
    /// elements below it.
    pub fn by_degree(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().collect();
        v.sort_by_key(|&p| (self.degree[p], p));
        v
    }

    /// Tests whether every maximal chain has the same length.
    pub fn is_pure(&self) -> Purity {
        // Longest and shortest unrefinable chains from p up to a maximal element.
        let order = self.by_degree();
        let n = self.len();
        let mut longest = vec![0usize; n];
        let mut shortest = vec![0usize; n];
        let mut next_long = vec![None; n];
        let mut next_short = vec![None; n];
        for &p in order.iter().rev() {
            for &r in &self.up[p] {
                if next_long[p].is_none() || longest[r] + 1 > longest[p] {
                    longest[p] = longest[r] + 1;
                    next_long[p] = Some(r);
                }
                if next_short[p].is_none() || shortest[r] + 1 < shortest[p] {
                    shortest[p] = shortest[r] + 1;
                    next_short[p] = Some(r);
                }
            }
        }
        let mins = self.minimal_elements();
        let (Some(&long_start), Some(&short_start)) = (
            mins.iter().max_by_key(|&&m| (longest[m], std::cmp::Reverse(m))),
            mins.iter().min_by_key(|&&m| (shortest[m], m)),
        ) else {
            return Purity { pure: true, witness: None };
        };
        if longest[long_start] == shortest[short_start] {
            return Purity { pure: true, witness: None };
        }
        let walk = |start: usize, next: &[Option<usize>]| {
            let mut members = vec![start];
            let mut cur = start;
            while let Some(r) = next[cur] {
                members.push(r);
                cur = r;
            }
            Chain { members, unrefinable: true }
        };
        Purity { pure: false, witness: Some((walk(short_start, &next_short), walk(long_start, &next_long))) }
    }

    /// `⟨Q⟩ = {p | p ≤ q for some q ∈ Q}` in index order.
    pub fn lower_set(&self, q: &[usize]) -> Vec<usize> {
        self.elements().filter(|&p| q.iter().any(|&x| self.leq(p, x))).collect()
    }

    /// Whether `set` is closed under going down.
    pub fn is_lower_closed(&self, set: &[usize]) -> Option<usize> {
        let mut member = vec![false; self.len()];
        for &s in set {
            member[s] = true;
        }
        for &s in set {
            for q in self.elements() {
                if self.leq(q, s) && !member[q] {
                    return Some(q);
                }
            }
        }
        None
    }

    /// Induced subposet on `subset`, keeping the relative index order. Returns the
    /// subposet and, for each of its elements, the index in `self`.
    pub fn induced(&self, subset: &[usize]) -> (Poset, Vec<usize>) {
        let mut keep: Vec<usize> = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let m = keep.len();
        let ids: Vec<String> = keep.iter().map(|&p| self.ids[p].clone()).collect();
        let index = ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let leq: Vec<Vec<bool>> = keep.iter().map(|&a| keep.iter().map(|&b| self.leq(a, b)).collect()).collect();
        let mut up = vec![Vec::new(); m];
        let mut down = vec![Vec::new(); m];
        for i in 0..m {
            for j in 0..m {
                if i != j && leq[i][j] && !(0..m).any(|k| k != i && k != j && leq[i][k] && leq[k][j]) {
                    up[i].push(j);
                    down[j].push(i);
                }
            }
        }
        let mut degree = vec![0; m];
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| self.degree[keep[i]]);
        for &p in &order {
            degree[p] = down[p].iter().map(|&q| degree[q] + 1).max().unwrap_or(0);
        }
        (Poset { ids, index, up, down, leq, degree }, keep)
    }

    /// Induced subposet on the lower set `⟨Q⟩`.
    pub fn lower_set_poset(&self, q: &[usize]) -> (Poset, Vec<usize>) {
        self.induced(&self.lower_set(q))
    }

    /// All nonempty chains (strictly increasing sequences) inside `subset`,
    /// enumerated by length, then lexicographically by index.
    pub fn chains_in(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut sorted: Vec<usize> = subset.to_vec();
        sorted.sort_by_key(|&p| (self.degree[p], p));
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut layer: Vec<Vec<usize>> = sorted.iter().map(|&p| vec![p]).collect();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for c in &layer {
                let last = *c.last().expect("nonempty chain");
                for &p in &sorted {
                    if self.lt(last, p) {
                        let mut d = c.clone();
                        d.push(p);
                        next.push(d);
                    }
                }
            }
            out.extend(layer);
            layer = next;
        }
        out
    }

    pub fn is_chain(&self, members: &[usize]) -> bool {
        members.windows(2).all(|w| self.lt(w[0], w[1]))
    }

    pub fn is_unrefinable(&self, members: &[usize]) -> bool {
        members.windows(2).all(|w| self.covers(w[0], w[1]))
    }

    pub fn chain(&self, members: Vec<usize>) -> Result<Chain> {
        if !self.is_chain(&members) {
            let bad = members.windows(2).find(|w| !self.lt(w[0], w[1])).map_or(0, |w| w[0]);
            return Err(Error::NotComparable(self.ids[bad].clone(), "next member".into()));
        }
        let unrefinable = self.is_unrefinable(&members);
        Ok(Chain { members, unrefinable })
    }

    /// Connected components of the comparability graph restricted to `subset`.
    pub fn is_connected(&self, subset: &[usize]) -> bool {
        if subset.is_empty() {
            return true;
        }
        let mut seen = vec![false; subset.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in 0..subset.len() {
                if !seen[j] && self.comparable(subset[i], subset[j]) {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

fn topological_order(up: &[Vec<usize>], down: &[Vec<usize>]) -> std::result::Result<Vec<usize>, usize> {
    let n = up.len();
    let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&p| indeg[p] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(p) = queue.pop_front() {
        order.push(p);
        for &r in &up[p] {
            indeg[r] -= 1;
            if indeg[r] == 0 {
                queue.push_back(r);
            }
        }
    }
    if order.len() < n {
        return Err((0..n).find(|&p| indeg[p] > 0).expect("element on a cycle"));
    }
    Ok(order)
}

/// A poset with a minimum `0̂` and a maximum `1̂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedPoset {
    poset: Poset,
    bottom: usize,
    top: usize,
    codegree: Vec<usize>,
}

impl Deref for BoundedPoset {
    type Target = Poset;

    fn deref(&self) -> &Poset {
        &self.poset
    }
}

impl BoundedPoset {
    /// Infers the bounds as the unique minimal and maximal elements.
    pub fn new(poset: Poset) -> Result<Self> {
        let mins = poset.minimal_elements();
        let maxs = poset.maximal_elements();
        if mins.len() != 1 {
            return Err(Error::NotBounded(format!("{} minimal elements", mins.len())));
        }
        if maxs.len() != 1 {
            return Err(Error::NotBounded(format!("{} maximal elements", maxs.len())));
        }
        Ok(Self::assemble(poset, mins[0], maxs[0]))
    }

    /// Uses the given bounds, checking `bottom ≤ p ≤ top` for all `p`.
    pub fn with_bounds(poset: Poset, bottom: &str, top: &str) -> Result<Self> {
        let (b, t) = (poset.index_of(bottom)?, poset.index_of(top)?);
        if let Some(p) = poset.elements().find(|&p| !poset.leq(b, p) || !poset.leq(p, t)) {
            return Err(Error::NotBounded(format!("`{}` is not between the bounds", poset.id(p))));
        }
        Ok(Self::assemble(poset, b, t))
    }

    fn assemble(poset: Poset, bottom: usize, top: usize) -> Self {
        // Breadth-first distance to the top along covers.
        let n = poset.len();
        let mut codegree = vec![usize::MAX; n];
        codegree[top] = 0;
        let mut queue = VecDeque::from([top]);
        while let Some(p) = queue.pop_front() {
            for &q in poset.lower_covers(p) {
                if codegree[q] == usize::MAX {
                    codegree[q] = codegree[p] + 1;
                    queue.push_back(q);
                }
            }
        }
        BoundedPoset { poset, bottom, top, codegree }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_poset(self) -> Poset {
        self.poset
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Length of the shortest unrefinable chain from `p` to `1̂`.
    pub fn codegree(&self, p: usize) -> usize {
        self.codegree[p]
    }

    /// `d(P) = d(1̂)`.
    pub fn degree_of_poset(&self) -> usize {
        self.poset.degree(self.top)
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.poset.upper_covers(self.bottom).to_vec()
    }

    pub fn coatoms(&self) -> Vec<usize> {
        self.poset.lower_covers(self.top).to_vec()
    }

    /// `P̄ = P ∖ {0̂, 1̂}`.
    pub fn proper_part(&self) -> Vec<usize> {
        self.elements().filter(|&p| p != self.bottom && p != self.top).collect()
    }

    /// `P ∖ {1̂}`.
    pub fn without_top(&self) -> Vec<usize> {
        self.elements().filter(|&p| p != self.top).collect()
    }

    /// All unrefinable chains `c_0 ≺ c_1 ≺ ... ≺ c_i = 1̂` of length `i`, in
    /// lexicographic order of their members read from the top down.
    pub fn unrefinable_top_chains(&self, i: usize) -> Vec<Chain> {
        let mut out = Vec::new();
        let mut stack = vec![self.top];
        self.extend_down(&mut stack, i, &mut out);
        out
    }

    fn extend_down(&self, stack: &mut Vec<usize>, remaining: usize, out: &mut Vec<Chain>) {
        if remaining == 0 {
            let members: Vec<usize> = stack.iter().rev().copied().collect();
            out.push(Chain { members, unrefinable: true });
            return;
        }
        let last = *stack.last().expect("nonempty");
        for &q in self.poset.lower_covers(last) {
            stack.push(q);
            self.extend_down(stack, remaining - 1, out);
            stack.pop();
        }
    }

    /// Every unrefinable `1̂`-chain of every length.
    pub fn all_top_chains(&self) -> Vec<Chain> {
        (0..=self.degree_of_poset()).flat_map(|i| self.unrefinable_top_chains(i)).collect()
    }

    /// Checks that `members` is an unrefinable chain ending at `1̂`.
    pub fn top_chain(&self, members: Vec<usize>) -> Result<Chain> {
        if members.last() != Some(&self.top) {
            return Err(Error::ChainNotToTop);
        }
        if let Some(w) = members.windows(2).find(|w| !self.poset.covers(w[0], w[1])) {
            return Err(Error::NotUnrefinable(self.poset.id(w[0]).to_string()));
        }
        Ok(Chain { members, unrefinable: true })
    }

    /// Parses `"c0<c1<...<1̂"`.
    pub fn parse_top_chain(&self, label: &str) -> Result<Chain> {
        let members = label.split('<').map(|s| self.poset.index_of(s.trim())).collect::<Result<Vec<_>>>()?;
        self.top_chain(members)
    }

    /// Induced bounded subposet; `subset` must contain both bounds of the result.
    pub fn induced_bounded(&self, subset: &[usize]) -> Result<(BoundedPoset, Vec<usize>)> {
        let (sub, map) = self.poset.induced(subset);
        Ok((BoundedPoset::new(sub)?, map))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean(n: usize) -> BoundedPoset {
        let ids: Vec<String> = (0..1usize << n).map(|m| format!("{m}")).collect();
        let mut covers = Vec::new();
        for m in 0..1usize << n {
            for b in 0..n {
                if m & (1 << b) == 0 {
                    covers.push((format!("{m}"), format!("{}", m | (1 << b))));
                }
            }
        }
        BoundedPoset::new(Poset::new(&ids, &covers).unwrap()).unwrap()
    }

    #[test]
    fn two_element_chain() {
        let p = Poset::new(&["a", "b"], &[("a", "b")]).unwrap();
        assert!(p.lt(0, 1));
        assert_eq!(p.degree(1), 1);
    }

    #[test]
    fn rejects_transitive_edge() {
        let err = Poset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap_err();
        assert_eq!(err, Error::NonCoverPair { q: "a".into(), p: "c".into(), r: "b".into() });
    }

    #[test]
    fn rejects_cycles_and_duplicates() {
        assert!(matches!(Poset::new(&["a", "b"], &[("a", "b"), ("b", "a")]), Err(Error::CycleDetected(_))));
        assert!(matches!(Poset::new(&["a", "a"], &[]), Err(Error::DuplicateElement(_))));
        assert!(matches!(Poset::new(&["a"], &[("a", "z")]), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn from_relation_reduces_to_covers() {
        let p = Poset::from_relation(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert!(p.covers(0, 1) && p.covers(1, 2) && !p.covers(0, 2));
    }

    #[test]
    fn boolean_degrees_and_codegrees() {
        let b3 = boolean(3);
        assert_eq!(b3.degree(b3.top()), 3);
        assert_eq!(b3.codegree(b3.top()), 0);
        let b4 = boolean(4);
        assert_eq!(b4.codegree(1), 3);
        assert_eq!(b3.unrefinable_top_chains(3).len(), 6);
        assert_eq!(b3.unrefinable_top_chains(0).len(), 1);
        assert!(b3.is_pure().pure);
    }

    #[test]
    fn impure_witness() {
        let p =
            Poset::new(&["a", "b", "d", "c1", "c2"], &[("a", "b"), ("b", "d"), ("a", "c1"), ("c1", "c2"), ("c2", "d")])
                .unwrap();
        let purity = p.is_pure();
        assert!(!purity.pure);
        let (short, long) = purity.witness.unwrap();
        assert_eq!((short.len(), long.len()), (2, 3));
    }

    #[test]
    fn lower_sets() {
        let b3 = boolean(3);
        assert!(b3.lower_set(&[]).is_empty());
        assert_eq!(b3.lower_set(&[b3.top()]).len(), 8);
        let (sub, map) = b3.lower_set_poset(&[1, 2]);
        assert_eq!(sub.len(), 3);
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(b3.is_lower_closed(&[1]), Some(0));
    }

    #[test]
    fn chain_enumeration() {
        let b3 = boolean(3);
        let chains = b3.chains_in(&b3.proper_part());
        assert_eq!(chains.iter().filter(|c| c.len() == 1).count(), 6);
        assert_eq!(chains.iter().filter(|c| c.len() == 2).count(), 6);
        assert!(b3.is_connected(&b3.proper_part()));
        assert!(!b3.is_connected(&[1, 2]));
    }
}
