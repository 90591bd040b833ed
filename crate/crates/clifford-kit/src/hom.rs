//! Complete enumeration of semigroup homomorphisms between Cayley tables.
//!
//! Two interchangeable enumeration routes are kept side by side: a full scan
//! over all `|Y|^|X|` candidate maps (the oracle, feasible below a budget)
//! and a backtracking search over a greedily chosen generating set with
//! forward checking. Both return the same duplicate-free list in
//! lexicographic order of map arrays; the test suite compares them
//! exhaustively on small pairs.

use crate::construct;
use crate::error::Error;
use crate::limits;
use crate::order::SemilatticeOrder;
use crate::semigroup::FiniteSemigroup;
use crate::Result;

/// A total map between two finite semigroups satisfying
/// `h(x·y) = h(x)·h(y)`; verified at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: FiniteSemigroup,
    target: FiniteSemigroup,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(source: FiniteSemigroup, target: FiniteSemigroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::NotSquare {
                row: 0,
                expected: source.size(),
                found: map.len(),
            });
        }
        for &v in &map {
            if v >= target.size() {
                return Err(Error::NoSuchElement {
                    element: v,
                    size: target.size(),
                });
            }
        }
        if let Some((x, y)) = hom_law_violation(&source, &target, &map) {
            return Err(Error::NotAHomomorphism { x, y });
        }
        Ok(Homomorphism {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &FiniteSemigroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteSemigroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &v in &self.map {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.size()];
        for &v in &self.map {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }
}

fn hom_law_violation(
    source: &FiniteSemigroup,
    target: &FiniteSemigroup,
    map: &[usize],
) -> Option<(usize, usize)> {
    let n = source.size();
    for x in 0..n {
        for y in 0..n {
            if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Total number of candidate maps `|Y|^|X|`, saturating at `u128::MAX`.
pub fn candidate_count(x: &FiniteSemigroup, y: &FiniteSemigroup) -> u128 {
    let mut total: u128 = 1;
    for _ in 0..x.size() {
        total = match total.checked_mul(y.size() as u128) {
            Some(t) => t,
            None => return u128::MAX,
        };
    }
    total
}

/// Enumerates `Hom(X,Y)` by scanning every candidate map.
///
/// The scan is the independent oracle for the backtracking route; it emits
/// maps in ascending lexicographic order by construction.
pub fn enumerate_homs_scan(
    x: &FiniteSemigroup,
    y: &FiniteSemigroup,
    budget: u128,
) -> Result<Vec<Homomorphism>> {
    let n = x.size();
    let m = y.size();
    let total = candidate_count(x, y);
    if total > budget {
        return Err(Error::BudgetExceeded {
            explored: total,
            budget,
        });
    }
    if n == 0 {
        return Ok(vec![Homomorphism::new(x.clone(), y.clone(), vec![])?]);
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    loop {
        if hom_law_violation(x, y, &map).is_none() {
            out.push(Homomorphism::new(x.clone(), y.clone(), map.clone())?);
        }
        // advance the odometer; most significant digit first keeps lex order
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            map[i] += 1;
            if map[i] < m {
                break;
            }
            map[i] = 0;
        }
    }
}

struct Generators {
    /// Greedily chosen generators, ascending.
    gens: Vec<usize>,
    /// `stages[i]`: elements first reachable once `gens[..=i]` are present,
    /// each recorded as `(a, b, a·b)` with both operands already reachable.
    stages: Vec<Vec<(usize, usize, usize)>>,
}

fn generating_set(x: &FiniteSemigroup) -> Generators {
    let n = x.size();
    let mut known = vec![false; n];
    let mut discovered: Vec<usize> = Vec::new();
    let mut gens = Vec::new();
    let mut stages = Vec::new();
    while let Some(next) = (0..n).find(|&i| !known[i]) {
        gens.push(next);
        known[next] = true;
        discovered.push(next);
        let mut stage = Vec::new();
        loop {
            let len = discovered.len();
            let mut grew = false;
            for ai in 0..len {
                for bi in 0..len {
                    let a = discovered[ai];
                    let b = discovered[bi];
                    let p = x.mul(a, b);
                    if !known[p] {
                        known[p] = true;
                        discovered.push(p);
                        stage.push((a, b, p));
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        stages.push(stage);
    }
    Generators { gens, stages }
}

/// Enumerates `Hom(X,Y)` by backtracking over generator images.
///
/// Images of non-generators are forced by their derivations; partial
/// assignments are pruned as soon as the homomorphism law fails on assigned
/// elements. The search counts explored nodes against `node_budget` and
/// errors out rather than returning an incomplete list.
pub fn enumerate_homs_backtracking(
    x: &FiniteSemigroup,
    y: &FiniteSemigroup,
    node_budget: u128,
) -> Result<Vec<Homomorphism>> {
    let n = x.size();
    let m = y.size();
    if n == 0 {
        return Ok(vec![Homomorphism::new(x.clone(), y.clone(), vec![])?]);
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let gen = generating_set(x);

    // pairs_with_product[v] lists every (a, b) with a·b = v, so a pair can be
    // checked exactly when the last of {a, b, a·b} receives its image
    let mut pairs_with_product: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            pairs_with_product[x.mul(a, b)].push((a, b));
        }
    }

    struct Search<'a> {
        x: &'a FiniteSemigroup,
        y: &'a FiniteSemigroup,
        gen: &'a Generators,
        pairs_with_product: &'a [Vec<(usize, usize)>],
        map: Vec<usize>,
        assigned: Vec<usize>,
        nodes: u128,
        budget: u128,
        out: Vec<Vec<usize>>,
    }

    const UNSET: usize = usize::MAX;

    impl Search<'_> {
        fn check_on_assign(&self, v: usize) -> bool {
            // pairs with v as an operand whose product already has an image
            for &w in &self.assigned {
                let p = self.x.mul(v, w);
                if self.map[p] != UNSET
                    && self.map[p] != self.y.mul(self.map[v], self.map[w])
                {
                    return false;
                }
                let q = self.x.mul(w, v);
                if self.map[q] != UNSET
                    && self.map[q] != self.y.mul(self.map[w], self.map[v])
                {
                    return false;
                }
            }
            // pairs whose product is v and whose operands both have images
            for &(a, b) in &self.pairs_with_product[v] {
                if self.map[a] != UNSET
                    && self.map[b] != UNSET
                    && self.map[v] != self.y.mul(self.map[a], self.map[b])
                {
                    return false;
                }
            }
            true
        }

        fn descend(&mut self, stage: usize) -> Result<()> {
            if stage == self.gen.gens.len() {
                self.out.push(self.map.clone());
                return Ok(());
            }
            let g = self.gen.gens[stage];
            for v in 0..self.y.size() {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(Error::BudgetExceeded {
                        explored: self.nodes,
                        budget: self.budget,
                    });
                }
                let mark = self.assigned.len();
                self.map[g] = v;
                self.assigned.push(g);
                let mut ok = self.check_on_assign(g);
                if ok {
                    for &(a, b, p) in &self.gen.stages[stage] {
                        self.map[p] = self.y.mul(self.map[a], self.map[b]);
                        self.assigned.push(p);
                        if !self.check_on_assign(p) {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    self.descend(stage + 1)?;
                }
                while self.assigned.len() > mark {
                    let u = self.assigned.pop().unwrap();
                    self.map[u] = UNSET;
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        x,
        y,
        gen: &gen,
        pairs_with_product: &pairs_with_product,
        map: vec![UNSET; n],
        assigned: Vec::new(),
        nodes: 0,
        budget: node_budget,
        out: Vec::new(),
    };
    search.descend(0)?;
    let mut maps = search.out;
    maps.sort_unstable();
    maps.into_iter()
        .map(|map| Homomorphism::new(x.clone(), y.clone(), map))
        .collect()
}

/// Enumerates `Hom(X,Y)`: full scan below [`limits::HOM_SCAN_BUDGET`]
/// candidates, otherwise backtracking.
pub fn enumerate_homs(x: &FiniteSemigroup, y: &FiniteSemigroup) -> Result<Vec<Homomorphism>> {
    if candidate_count(x, y) <= limits::HOM_SCAN_BUDGET {
        enumerate_homs_scan(x, y, limits::HOM_SCAN_BUDGET)
    } else {
        enumerate_homs_backtracking(x, y, limits::HOM_NODE_BUDGET)
    }
}

/// All homomorphisms from the semilattice into `chain(levels)` that send `a`
/// to the top and the ideal complementary to `↑e` to the bottom.
///
/// Requires `e ≤ a`; the up-cone indicator of `e` always qualifies, so the
/// result is never empty.
pub fn separating_homs(
    order: &SemilatticeOrder,
    e: usize,
    a: usize,
    levels: usize,
) -> Result<Vec<Homomorphism>> {
    order.base().check_element(e)?;
    order.base().check_element(a)?;
    if !order.leq(e, a) {
        return Err(Error::NotBelow { e, a });
    }
    let target = construct::chain(levels)?;
    let top = target.size() - 1;
    let complement: Vec<usize> =
        (0..order.size()).filter(|&i| !order.leq(e, i)).collect();
    let homs = enumerate_homs(order.base(), &target)?;
    let picked: Vec<Homomorphism> = homs
        .into_iter()
        .filter(|h| h.apply(a) == top && complement.iter().all(|&i| h.apply(i) == 0))
        .collect();
    assert!(
        !picked.is_empty(),
        "the up-cone indicator of {e} must be in the set"
    );
    Ok(picked)
}

/// Deterministic pick from [`separating_homs`]: the indicator of `↑e`,
/// scaled to the bottom and top of `chain(levels)`. Its image is two-valued,
/// so it also witnesses the `chain(1)` case whatever `levels` is.
pub fn select_separating_hom(
    order: &SemilatticeOrder,
    e: usize,
    a: usize,
    levels: usize,
) -> Result<Homomorphism> {
    order.base().check_element(e)?;
    order.base().check_element(a)?;
    if !order.leq(e, a) {
        return Err(Error::NotBelow { e, a });
    }
    let target = construct::chain(levels)?;
    let top = target.size() - 1;
    let map: Vec<usize> = (0..order.size())
        .map(|x| if order.leq(e, x) { top } else { 0 })
        .collect();
    Homomorphism::new(order.base().clone(), target, map)
}

/// The product map `x ↦ (h(x))_h` together with its injectivity verdict and
/// the pairs it fails to separate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalMap {
    /// `images[x]` is the tuple of coordinate values of element `x`.
    pub images: Vec<Vec<usize>>,
    pub injective: bool,
    /// Pairs `(x, y)` with `x < y` mapped to the same tuple.
    pub unseparated: Vec<(usize, usize)>,
}

/// Evaluates the canonical map of `x` through the given homomorphism family.
/// In the finite discrete reading, injectivity of this map is exactly
/// separation and exactly embeddability.
pub fn canonical_map(x: &FiniteSemigroup, homs: &[Homomorphism]) -> CanonicalMap {
    for h in homs {
        assert_eq!(
            h.source().table(),
            x.table(),
            "canonical map requires homomorphisms out of the same semigroup"
        );
    }
    let images: Vec<Vec<usize>> = (0..x.size())
        .map(|v| homs.iter().map(|h| h.apply(v)).collect())
        .collect();
    let mut unseparated = Vec::new();
    for a in 0..x.size() {
        for b in a + 1..x.size() {
            if images[a] == images[b] {
                unseparated.push((a, b));
            }
        }
    }
    CanonicalMap {
        injective: unseparated.is_empty(),
        images,
        unseparated,
    }
}
