//! Composite semigroups: direct products, reduced products, chains, cones
//! over groups and 0-extensions.
//!
//! A reduced product `E ×_I H` collapses the block `I × H` of the direct
//! product `E × H` to `I` itself. Its element set is `I ∪ ((E∖I) × H)`,
//! coded here with the collapsed ideal elements first (in `E`-order) and the
//! surviving pairs after them in lexicographic `(E, H)` order, so labels are
//! stable across runs.

use num_bigint::BigUint;
use num_rational::Ratio;

use crate::error::Error;
use crate::hom::Homomorphism;
use crate::limits;
use crate::semigroup::{classify, right_division_set, CliffordStructure, FiniteSemigroup};
use crate::Result;

/// The two-element semilattice `{0, 1}` under minimum.
pub fn two() -> FiniteSemigroup {
    chain(1).expect("two-element chain is always constructible")
}

/// The `(n+1)`-element chain semilattice under minimum, labeled by the
/// rationals `0, 1/n, …, 1`.
pub fn chain(n: usize) -> Result<FiniteSemigroup> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "chain needs at least one level".into(),
        ));
    }
    let size = n + 1;
    let table: Vec<Vec<usize>> = (0..size)
        .map(|i| (0..size).map(|j| i.min(j)).collect())
        .collect();
    let labels: Vec<String> = (0..size)
        .map(|i| Ratio::new(i as i64, n as i64).to_string())
        .collect();
    FiniteSemigroup::from_table_with_labels(table, labels)
}

/// Componentwise product on `|A|·|B|` elements, coded as `a·|B| + b`.
pub fn direct_product(a: &FiniteSemigroup, b: &FiniteSemigroup) -> Result<FiniteSemigroup> {
    let size = a.size().saturating_mul(b.size());
    let cap = limits::max_elements();
    if size > cap {
        return Err(Error::TooManyElements { size, cap });
    }
    let nb = b.size();
    let code = |x: usize, y: usize| x * nb + y;
    let table: Vec<Vec<usize>> = (0..size)
        .map(|u| {
            let (ua, ub) = (u / nb, u % nb);
            (0..size)
                .map(|v| code(a.mul(ua, v / nb), b.mul(ub, v % nb)))
                .collect()
        })
        .collect();
    let labels: Vec<String> = (0..size)
        .map(|u| format!("({},{})", a.label(u / nb), b.label(u % nb)))
        .collect();
    FiniteSemigroup::from_table_with_labels(table, labels)
}

/// One element of a reduced product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReducedElement {
    /// An ideal element surviving the collapse, by its index in `E`.
    Collapsed(usize),
    /// A pair `(e, h)` with `e ∉ I`, by indices in `E` and `H`.
    Pair(usize, usize),
}

/// Element coding of `I ∪ ((E∖I) × H)`.
#[derive(Clone, Debug)]
pub struct ReducedCoding {
    ideal: Vec<usize>,
    rest: Vec<usize>,
    h_size: usize,
}

impl ReducedCoding {
    pub fn size(&self) -> usize {
        self.ideal.len() + self.rest.len() * self.h_size
    }

    pub fn ideal(&self) -> &[usize] {
        &self.ideal
    }

    /// Index of a collapsed ideal element, if `e ∈ I`.
    pub fn encode_collapsed(&self, e: usize) -> Option<usize> {
        self.ideal.binary_search(&e).ok()
    }

    /// Index of the pair `(e, h)`, if `e ∉ I`.
    pub fn encode_pair(&self, e: usize, h: usize) -> Option<usize> {
        self.rest
            .binary_search(&e)
            .ok()
            .map(|pos| self.ideal.len() + pos * self.h_size + h)
    }

    /// The collapse `E × H → E ×_I H` on codes.
    pub fn encode(&self, e: usize, h: usize) -> usize {
        self.encode_collapsed(e)
            .or_else(|| self.encode_pair(e, h))
            .expect("element of E is either in the ideal or outside it")
    }

    pub fn decode(&self, index: usize) -> ReducedElement {
        if index < self.ideal.len() {
            ReducedElement::Collapsed(self.ideal[index])
        } else {
            let off = index - self.ideal.len();
            ReducedElement::Pair(self.rest[off / self.h_size], off % self.h_size)
        }
    }

    /// The `E`-coordinate of an element (the natural projection on codes).
    pub fn project(&self, index: usize) -> usize {
        match self.decode(index) {
            ReducedElement::Collapsed(e) => e,
            ReducedElement::Pair(e, _) => e,
        }
    }
}

/// A reduced product with its two natural projections, both verified to be
/// homomorphisms.
#[derive(Clone, Debug)]
pub struct ReducedProduct {
    pub semigroup: FiniteSemigroup,
    /// The collapse `q : E × H → E ×_I H`.
    pub quotient: Homomorphism,
    /// The projection `E ×_I H → E`.
    pub projection: Homomorphism,
    pub coding: ReducedCoding,
}

/// Builds `E ×_I H` for a semilattice `E`, an ideal `I` of `E` and an
/// arbitrary semigroup `H`. The operation is the unique one making the
/// collapse of `E × H` a homomorphism.
pub fn reduced_product(
    e: &FiniteSemigroup,
    ideal: &[usize],
    h: &FiniteSemigroup,
) -> Result<ReducedProduct> {
    if !classify(e).is_semilattice {
        return Err(Error::NotSemilattice);
    }
    let mut ideal: Vec<usize> = ideal.to_vec();
    ideal.sort_unstable();
    ideal.dedup();
    for &i in &ideal {
        e.check_element(i)?;
    }
    let in_ideal = {
        let mut v = vec![false; e.size()];
        for &i in &ideal {
            v[i] = true;
        }
        v
    };
    for x in 0..e.size() {
        for &i in &ideal {
            let p = e.mul(x, i);
            if !in_ideal[p] {
                return Err(Error::NotAnIdeal { x, y: i, product: p });
            }
        }
    }

    let rest: Vec<usize> = (0..e.size()).filter(|&x| !in_ideal[x]).collect();
    let coding = ReducedCoding {
        ideal,
        rest,
        h_size: h.size(),
    };
    let size = coding.size();
    let cap = limits::max_elements();
    if size > cap {
        return Err(Error::TooManyElements { size, cap });
    }

    let mul = |u: usize, v: usize| -> usize {
        match (coding.decode(u), coding.decode(v)) {
            (ReducedElement::Collapsed(x), ReducedElement::Collapsed(y)) => coding
                .encode_collapsed(e.mul(x, y))
                .expect("ideal is closed under meets"),
            (ReducedElement::Collapsed(x), ReducedElement::Pair(y, _))
            | (ReducedElement::Pair(x, _), ReducedElement::Collapsed(y)) => coding
                .encode_collapsed(e.mul(x, y))
                .expect("ideal absorbs products"),
            (ReducedElement::Pair(x, hx), ReducedElement::Pair(y, hy)) => {
                coding.encode(e.mul(x, y), h.mul(hx, hy))
            }
        }
    };
    let table: Vec<Vec<usize>> = (0..size)
        .map(|u| (0..size).map(|v| mul(u, v)).collect())
        .collect();
    let labels: Vec<String> = (0..size)
        .map(|u| match coding.decode(u) {
            ReducedElement::Collapsed(x) => e.label(x),
            ReducedElement::Pair(x, hx) => format!("({},{})", e.label(x), h.label(hx)),
        })
        .collect();
    let semigroup = FiniteSemigroup::from_table_with_labels(table, labels)?;

    let dp = direct_product(e, h)?;
    let q_map: Vec<usize> = (0..dp.size())
        .map(|u| coding.encode(u / h.size(), u % h.size()))
        .collect();
    let quotient = Homomorphism::new(dp, semigroup.clone(), q_map)?;
    let proj_map: Vec<usize> = (0..size).map(|u| coding.project(u)).collect();
    let projection = Homomorphism::new(semigroup.clone(), e.clone(), proj_map)?;

    Ok(ReducedProduct {
        semigroup,
        quotient,
        projection,
        coding,
    })
}

/// The cone over a group at finite resolution: `chain(levels) ×_{0} G`, with
/// `1 + levels·|G|` elements. `levels = 1` gives the 0-extension of `G`.
pub fn cone(g: &FiniteSemigroup, levels: usize) -> Result<ReducedProduct> {
    if !classify(g).is_group {
        return Err(Error::NotAGroup);
    }
    reduced_product(&chain(levels)?, &[0], g)
}

/// Outcome of the discrete divisibility check, with the per-element witness
/// sets `({x} ÷ {π(x)}) ∩ π⁻¹(π(x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DitopologicalReport {
    pub verdict: bool,
    /// For each element `x`, the witness set; the verdict holds iff each one
    /// equals `{x}`.
    pub witnesses: Vec<(usize, Vec<usize>)>,
}

/// Evaluates the divisibility condition with the minimal discrete
/// neighborhoods `U_x = {x}`, `W = {π(x)}`, `O_x = {x}`. Finite discrete
/// Clifford semigroups always satisfy it; the point of the operation is to
/// exhibit the witnesses instead of assuming the fact.
pub fn check_ditopological_discrete(
    s: &FiniteSemigroup,
    c: &CliffordStructure,
) -> DitopologicalReport {
    let mut witnesses = Vec::with_capacity(s.size());
    let mut verdict = true;
    for x in 0..s.size() {
        let e = c.pi[x];
        let division = right_division_set(s, &[x], &[e]);
        let fiber: Vec<usize> = division.into_iter().filter(|&z| c.pi[z] == e).collect();
        if fiber != vec![x] {
            verdict = false;
        }
        witnesses.push((x, fiber));
    }
    DitopologicalReport { verdict, witnesses }
}

/// A product of validated semigroups kept in coded form: elements are
/// mixed-radix indices and the operation multiplies componentwise on demand.
/// Lets embedding targets beyond table size still be explicit semigroups.
#[derive(Clone, Debug)]
pub struct ProductSemigroup {
    factors: Vec<FiniteSemigroup>,
    size: usize,
}

impl ProductSemigroup {
    pub fn new(factors: Vec<FiniteSemigroup>, cap: usize) -> Result<Self> {
        let mut exact = BigUint::from(1u32);
        for f in &factors {
            exact *= BigUint::from(f.size());
        }
        if exact > BigUint::from(cap) {
            return Err(Error::TargetTooLarge {
                required: exact.to_string(),
                cap,
            });
        }
        let size = exact
            .to_string()
            .parse::<usize>()
            .expect("bounded by cap, so it fits");
        Ok(ProductSemigroup { factors, size })
    }

    /// Exact size of a would-be product, without building it.
    pub fn required_size(factors: &[&FiniteSemigroup]) -> BigUint {
        let mut exact = BigUint::from(1u32);
        for f in factors {
            exact *= BigUint::from(f.size());
        }
        exact
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn factors(&self) -> &[FiniteSemigroup] {
        &self.factors
    }

    /// Codes a tuple of factor elements; the last factor varies fastest,
    /// matching [`direct_product`].
    pub fn encode(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.factors.len());
        let mut index = 0usize;
        for (f, &d) in self.factors.iter().zip(digits) {
            index = index * f.size() + d;
        }
        index
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0usize; self.factors.len()];
        for (slot, f) in digits.iter_mut().zip(&self.factors).rev() {
            *slot = index % f.size();
            index /= f.size();
        }
        digits
    }

    pub fn mul(&self, u: usize, v: usize) -> usize {
        let du = self.decode(u);
        let dv = self.decode(v);
        let product: Vec<usize> = self
            .factors
            .iter()
            .zip(du.iter().zip(&dv))
            .map(|(f, (&a, &b))| f.mul(a, b))
            .collect();
        self.encode(&product)
    }

    /// Expands into a full Cayley table when small enough.
    pub fn to_finite(&self) -> Result<FiniteSemigroup> {
        let cap = limits::max_elements();
        if self.size > cap {
            return Err(Error::TooManyElements {
                size: self.size,
                cap,
            });
        }
        let table: Vec<Vec<usize>> = (0..self.size)
            .map(|u| (0..self.size).map(|v| self.mul(u, v)).collect())
            .collect();
        FiniteSemigroup::from_table(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{clifford_structure, maximal_subgroups};

    fn z2() -> FiniteSemigroup {
        crate::catalog::cyclic(2)
    }

    fn z3() -> FiniteSemigroup {
        crate::catalog::cyclic(3)
    }

    #[test]
    fn chain_shapes() {
        assert_eq!(chain(1).unwrap().table(), two().table());
        assert_eq!(chain(2).unwrap().size(), 3);
        assert_eq!(chain(4).unwrap().size(), 5);
        assert_eq!(
            chain(4).unwrap().labels().unwrap(),
            &["0", "1/4", "1/2", "3/4", "1"]
        );
        assert!(chain(0).is_err());
    }

    #[test]
    fn products_of_the_basic_examples() {
        let p = direct_product(&two(), &z2()).unwrap();
        assert_eq!(p.size(), 4);
        assert!(classify(&p).is_clifford);

        let diamond = direct_product(&two(), &two()).unwrap();
        assert!(classify(&diamond).is_semilattice);

        let klein = direct_product(&z2(), &z2()).unwrap();
        let c = classify(&klein);
        assert!(c.is_group && c.is_clifford);
    }

    #[test]
    fn zero_extension_of_z2() {
        let rp = reduced_product(&two(), &[0], &z2()).unwrap();
        assert_eq!(rp.semigroup.size(), 3);
        assert!(classify(&rp.semigroup).is_clifford);
        assert_eq!(
            rp.semigroup.table(),
            &[vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]
        );
        assert_eq!(rp.semigroup.label(0), "0");
        assert_eq!(rp.semigroup.label(2), "(1,g)");
    }

    #[test]
    fn reduced_product_of_chain_and_z2() {
        let rp = reduced_product(&chain(2).unwrap(), &[0], &z2()).unwrap();
        assert_eq!(rp.semigroup.size(), 5);
        assert!(classify(&rp.semigroup).is_clifford);
    }

    #[test]
    fn empty_ideal_gives_the_direct_product() {
        let rp = reduced_product(&two(), &[], &z2()).unwrap();
        let dp = direct_product(&two(), &z2()).unwrap();
        assert!(rp.semigroup.same_table(&dp));
    }

    #[test]
    fn non_ideal_is_rejected() {
        // {1} is an upper set of the two-element chain, not an ideal
        assert!(matches!(
            reduced_product(&two(), &[1], &z2()),
            Err(Error::NotAnIdeal { .. })
        ));
    }

    #[test]
    fn quotient_and_projection_compose_to_the_first_coordinate() {
        let e = chain(2).unwrap();
        let rp = reduced_product(&e, &[0], &z2()).unwrap();
        assert!(rp.quotient.is_surjective());
        for x in 0..e.size() {
            for h in 0..2 {
                let u = rp.quotient.apply(x * 2 + h);
                assert_eq!(rp.projection.apply(u), x);
            }
        }
    }

    #[test]
    fn maximal_semilattice_of_a_reduced_product_is_the_base() {
        let e = chain(2).unwrap();
        let rp = reduced_product(&e, &[0], &z2()).unwrap();
        let idem = rp.semigroup.idempotents();
        let sub = rp.semigroup.sub_semigroup(&idem).unwrap();
        assert!(sub.semigroup.same_table(&e));
    }

    #[test]
    fn cone_examples() {
        assert_eq!(cone(&z2(), 1).unwrap().semigroup.size(), 3);
        assert_eq!(cone(&z2(), 2).unwrap().semigroup.size(), 5);

        let trivial = FiniteSemigroup::from_table(vec![vec![0]]).unwrap();
        let c = cone(&trivial, 3).unwrap();
        assert!(c.semigroup.same_table(&chain(3).unwrap()));

        assert!(matches!(cone(&two(), 1), Err(Error::NotAGroup)));
    }

    #[test]
    fn cone_fibers_over_positive_levels_copy_the_group() {
        let rp = cone(&z3(), 2).unwrap();
        let c = clifford_structure(&rp.semigroup).unwrap();
        assert_eq!(c.idempotents, vec![0, 1, 4]); // apex, (1/2,e), (1,e)
        let groups = maximal_subgroups(&rp.semigroup, &c);
        assert_eq!(groups.groups[&0], vec![0]);
        for &e in &[1usize, 4] {
            let sub = rp.semigroup.sub_semigroup(&groups.groups[&e]).unwrap();
            assert!(sub.semigroup.same_table(&z3()));
        }
    }

    #[test]
    fn discrete_divisibility_holds_with_singleton_witnesses() {
        for s in [z2(), chain(3).unwrap(), cone(&z2(), 1).unwrap().semigroup] {
            let c = clifford_structure(&s).unwrap();
            let report = check_ditopological_discrete(&s, &c);
            assert!(report.verdict);
            for (x, witness) in report.witnesses {
                assert_eq!(witness, vec![x]);
            }
        }
    }

    #[test]
    fn coded_product_matches_the_explicit_one() {
        let p = ProductSemigroup::new(vec![two(), z2()], 1000).unwrap();
        let dp = direct_product(&two(), &z2()).unwrap();
        for u in 0..p.size() {
            for v in 0..p.size() {
                assert_eq!(p.mul(u, v), dp.mul(u, v));
            }
        }
        assert!(p.to_finite().unwrap().same_table(&dp));
    }

    #[test]
    fn coded_product_enforces_its_cap() {
        let err = ProductSemigroup::new(vec![chain(8).unwrap(); 8], 1000).unwrap_err();
        match err {
            Error::TargetTooLarge { required, cap } => {
                assert_eq!(required, (9u64.pow(8)).to_string());
                assert_eq!(cap, 1000);
            }
            other => panic!("expected TargetTooLarge, got {other:?}"),
        }
    }
}
