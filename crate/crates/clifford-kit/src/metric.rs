//! Subinvariant-metric machinery over exact rationals.
//!
//! Every distance is a `Rational64`; the checks below are equalities and
//! inequalities where floating-point rounding could both manufacture and
//! hide violations, so no floats appear anywhere.
//!
//! The subinvariant closure deserves a note. Taking the maximum of the
//! one-sided translates `d(zx,zy)`, `d(xz,yz)` and their inverse analogues
//! is *not* enough on noncommutative semigroups: on the symmetric group on
//! three letters a generic metric admits pairs whose one-sided closure still
//! grows under translation (conjugation moves mass between classes). The
//! closure implemented here therefore maximizes over two-sided translates
//! `z·a·w` with `z, w` ranging over the semigroup with an identity slot
//! adjoined, applied to both `(x,y)` and `(x⁻¹,y⁻¹)`. That operator always
//! returns a subinvariant metric dominating the input, and it is a fixed
//! point on metrics that are already subinvariant and inversion-isometric.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::construct::{cone, ReducedElement, ReducedProduct};
use crate::error::{Error, MetricAxiomFailure};
use crate::semigroup::{classify, CliffordStructure, FiniteSemigroup};
use crate::Result;

/// Exact rational distance value.
pub type Ratio = Rational64;

/// Shorthand for building a rational.
pub fn ratio(numer: i64, denom: i64) -> Ratio {
    Ratio::new(numer, denom)
}

/// First broken metric axiom in a distance table, if any.
#[allow(clippy::needless_range_loop)]
pub fn axioms_failure(size: usize, d: &[Vec<Ratio>]) -> Option<MetricAxiomFailure> {
    for x in 0..size {
        if !d[x][x].is_zero() {
            return Some(MetricAxiomFailure::NonzeroDiagonal { x });
        }
        for y in 0..size {
            if d[x][y] < Ratio::zero() {
                return Some(MetricAxiomFailure::Negative { x, y });
            }
            if x != y && d[x][y].is_zero() {
                return Some(MetricAxiomFailure::ZeroOffDiagonal { x, y });
            }
            if d[x][y] != d[y][x] {
                return Some(MetricAxiomFailure::NotSymmetric { x, y });
            }
        }
    }
    for x in 0..size {
        for y in 0..size {
            for z in 0..size {
                if d[x][z] > d[x][y] + d[y][z] {
                    return Some(MetricAxiomFailure::Triangle { x, y, z });
                }
            }
        }
    }
    None
}

/// A symmetric nonnegative distance table over the elements of a semigroup,
/// validated against all metric axioms at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricMatrix {
    base: FiniteSemigroup,
    d: Vec<Vec<Ratio>>,
}

impl MetricMatrix {
    pub fn new(base: FiniteSemigroup, d: Vec<Vec<Ratio>>) -> Result<Self> {
        let n = base.size();
        if d.len() != n {
            return Err(Error::NotSquare {
                row: 0,
                expected: n,
                found: d.len(),
            });
        }
        for (row, entries) in d.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::NotSquare {
                    row,
                    expected: n,
                    found: entries.len(),
                });
            }
        }
        if let Some(failure) = axioms_failure(n, &d) {
            return Err(Error::InvalidMetric(failure));
        }
        Ok(MetricMatrix { base, d })
    }

    /// The metric with all off-diagonal distances equal to one.
    pub fn discrete(base: FiniteSemigroup) -> Self {
        let n = base.size();
        let d: Vec<Vec<Ratio>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| if x == y { Ratio::zero() } else { Ratio::one() })
                    .collect()
            })
            .collect();
        MetricMatrix { base, d }
    }

    pub fn base(&self) -> &FiniteSemigroup {
        &self.base
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Ratio {
        self.d[x][y]
    }

    pub fn entries(&self) -> &[Vec<Ratio>] {
        &self.d
    }
}

/// Word metric `d(x,y) = |x⁻¹y|` on a group, from a generating set that is
/// closed under inversion internally. Bi-invariance is up to the caller's
/// choice of generators (a conjugation-closed set gives it).
pub fn word_metric(group: &FiniteSemigroup, generators: &[usize]) -> Result<MetricMatrix> {
    let c = classify(group);
    if !c.is_group {
        return Err(Error::NotAGroup);
    }
    let n = group.size();
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| group.mul(e, x) == x && group.mul(x, e) == x))
        .expect("a finite group has an identity");
    let inverse_of = |x: usize| {
        (0..n)
            .find(|&y| group.mul(x, y) == identity && group.mul(y, x) == identity)
            .expect("group elements are invertible")
    };
    let mut gens: Vec<usize> = Vec::new();
    for &g in generators {
        group.check_element(g)?;
        if g != identity {
            gens.push(g);
            gens.push(inverse_of(g));
        }
    }
    gens.sort_unstable();
    gens.dedup();

    // breadth-first word length from the identity
    let mut length = vec![usize::MAX; n];
    length[identity] = 0;
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &u in &frontier {
            for &g in &gens {
                let v = group.mul(u, g);
                if length[v] == usize::MAX {
                    length[v] = length[u] + 1;
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    if let Some(unreached) = (0..n).find(|&x| length[x] == usize::MAX) {
        return Err(Error::NotGenerating { unreached });
    }

    let d: Vec<Vec<Ratio>> = (0..n)
        .map(|x| {
            let xi = inverse_of(x);
            (0..n)
                .map(|y| Ratio::from_integer(length[group.mul(xi, y)] as i64))
                .collect()
        })
        .collect();
    MetricMatrix::new(group.clone(), d)
}

/// Translation-invariance flags that need no inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceFlags {
    pub left_subinvariant: bool,
    pub right_subinvariant: bool,
    /// Lexicographically least `(x, y, z)` with `d(zx, zy) > d(x, y)`.
    pub left_witness: Option<(usize, usize, usize)>,
    pub right_witness: Option<(usize, usize, usize)>,
}

/// Exhaustive check of `d(zx,zy) ≤ d(x,y)` and `d(xz,yz) ≤ d(x,y)`.
pub fn invariance_flags(m: &MetricMatrix) -> InvarianceFlags {
    let s = &m.base;
    let n = s.size();
    let mut left_witness = None;
    let mut right_witness = None;
    'left: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m.get(s.mul(z, x), s.mul(z, y)) > m.get(x, y) {
                    left_witness = Some((x, y, z));
                    break 'left;
                }
            }
        }
    }
    'right: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m.get(s.mul(x, z), s.mul(y, z)) > m.get(x, y) {
                    right_witness = Some((x, y, z));
                    break 'right;
                }
            }
        }
    }
    InvarianceFlags {
        left_subinvariant: left_witness.is_none(),
        right_subinvariant: right_witness.is_none(),
        left_witness,
        right_witness,
    }
}

/// Full flag set for a metric on a Clifford semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricFlags {
    /// Metric axioms re-verified (always true for a validated matrix).
    pub metric: bool,
    pub left_subinvariant: bool,
    pub right_subinvariant: bool,
    /// `d(x,y) = d(x⁻¹,y⁻¹)` for all pairs.
    pub inversion_isometry: bool,
    /// The conjunction of both one-sided bounds and the inversion isometry.
    pub subinvariant: bool,
    pub left_witness: Option<(usize, usize, usize)>,
    pub right_witness: Option<(usize, usize, usize)>,
    pub inversion_witness: Option<(usize, usize)>,
}

/// Checks left/right subinvariance and the inversion isometry exhaustively,
/// with lexicographically least counterexamples.
pub fn check_metric_flags(m: &MetricMatrix, c: &CliffordStructure) -> MetricFlags {
    let flags = invariance_flags(m);
    let n = m.base.size();
    let mut inversion_witness = None;
    'inv: for x in 0..n {
        for y in 0..n {
            if m.get(x, y) != m.get(c.inverse[x], c.inverse[y]) {
                inversion_witness = Some((x, y));
                break 'inv;
            }
        }
    }
    let inversion_isometry = inversion_witness.is_none();
    MetricFlags {
        metric: axioms_failure(n, &m.d).is_none(),
        left_subinvariant: flags.left_subinvariant,
        right_subinvariant: flags.right_subinvariant,
        inversion_isometry,
        subinvariant: flags.left_subinvariant && flags.right_subinvariant && inversion_isometry,
        left_witness: flags.left_witness,
        right_witness: flags.right_witness,
        inversion_witness,
    }
}

/// Subinvariant closure of a metric on a Clifford semigroup: the maximum of
/// the input metric over all two-sided translates of the pair and of its
/// inverse pair. The output is verified to be a subinvariant metric; a
/// failure there is an internal error, not an input condition.
pub fn subinvariant_closure(m: &MetricMatrix, c: &CliffordStructure) -> MetricMatrix {
    let s = &m.base;
    let n = s.size();
    // slot n is the adjoined identity: skip the multiplication
    let apply = |z: usize, a: usize, w: usize| -> usize {
        let mut r = a;
        if z < n {
            r = s.mul(z, r);
        }
        if w < n {
            r = s.mul(r, w);
        }
        r
    };
    let d: Vec<Vec<Ratio>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let mut best = Ratio::zero();
                    for (a, b) in [(x, y), (c.inverse[x], c.inverse[y])] {
                        for z in 0..=n {
                            for w in 0..=n {
                                let v = m.get(apply(z, a, w), apply(z, b, w));
                                if v > best {
                                    best = v;
                                }
                            }
                        }
                    }
                    best
                })
                .collect()
        })
        .collect();
    let closed = MetricMatrix::new(s.clone(), d)
        .expect("internal error: the closure of a metric must satisfy the metric axioms");
    let flags = check_metric_flags(&closed, c);
    assert!(
        flags.subinvariant,
        "internal error: the closure must be subinvariant (witnesses {:?} {:?} {:?})",
        flags.left_witness, flags.right_witness, flags.inversion_witness
    );
    closed
}

/// A point of the cone over a group: a rational level in `[0,1]` and a group
/// element. Level zero is the apex; its group coordinate is normalized away
/// so that equality is equality of cone points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConePoint {
    level: Ratio,
    element: usize,
}

impl ConePoint {
    pub fn new(level: Ratio, element: usize) -> Result<Self> {
        if level < Ratio::zero() || level > Ratio::one() {
            return Err(Error::InvalidConePoint {
                level: level.to_string(),
            });
        }
        Ok(ConePoint {
            level,
            element: if level.is_zero() { 0 } else { element },
        })
    }

    pub fn apex() -> Self {
        ConePoint {
            level: Ratio::zero(),
            element: 0,
        }
    }

    pub fn level(&self) -> Ratio {
        self.level
    }

    pub fn element(&self) -> usize {
        self.element
    }

    pub fn is_apex(&self) -> bool {
        self.level.is_zero()
    }
}

/// The cone distance `min{t_x + t_y, |t_x − t_y| + d(h_x, h_y)}`. The value
/// does not depend on the group coordinate chosen for the apex.
pub fn cone_metric(dg: &MetricMatrix, x: &ConePoint, y: &ConePoint) -> Ratio {
    let radial = x.level + y.level;
    let lateral = (x.level - y.level).abs() + dg.get(x.element, y.element);
    radial.min(lateral)
}

/// Cone multiplication `(s,g)·(t,h) = (min(s,t), gh)`, collapsing to the
/// apex at level zero.
pub fn cone_multiply(group: &FiniteSemigroup, x: &ConePoint, y: &ConePoint) -> ConePoint {
    let level = x.level.min(y.level);
    ConePoint::new(level, group.mul(x.element, y.element))
        .expect("levels of cone points stay in [0,1]")
}

/// Outcome of checking the cone metric on a finite sample.
#[derive(Clone, Debug)]
pub struct ConeSampleReport {
    /// The normalized, deduplicated, sorted sample the indices refer to.
    pub points: Vec<ConePoint>,
    pub metric: bool,
    pub metric_failure: Option<MetricAxiomFailure>,
    pub left_subinvariant: bool,
    pub right_subinvariant: bool,
    pub left_witness: Option<(usize, usize, usize)>,
    pub right_witness: Option<(usize, usize, usize)>,
    pub base_left_subinvariant: bool,
    pub base_right_subinvariant: bool,
    /// Inheritance claims: a one-sided subinvariance of the base metric must
    /// reappear in the cone metric.
    pub inherits_left: bool,
    pub inherits_right: bool,
}

/// Checks the metric axioms and both one-sided subinvariance claims of the
/// cone metric exhaustively on a multiplication-closed sample.
pub fn verify_cone_metric(dg: &MetricMatrix, sample: &[ConePoint]) -> Result<ConeSampleReport> {
    let group = dg.base().clone();
    if !classify(&group).is_group {
        return Err(Error::NotAGroup);
    }
    for p in sample {
        group.check_element(p.element())?;
    }
    let mut points: Vec<ConePoint> = sample.to_vec();
    points.sort_unstable();
    points.dedup();

    let find = |p: &ConePoint| points.binary_search(p).ok();
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points.iter().enumerate() {
            if find(&cone_multiply(&group, x, y)).is_none() {
                return Err(Error::SampleNotClosed { x: i, y: j });
            }
        }
    }

    let k = points.len();
    let d: Vec<Vec<Ratio>> = (0..k)
        .map(|i| (0..k).map(|j| cone_metric(dg, &points[i], &points[j])).collect())
        .collect();
    let metric_failure = axioms_failure(k, &d);

    let mut left_witness = None;
    'left: for z in 0..k {
        for x in 0..k {
            for y in 0..k {
                let zx = find(&cone_multiply(&group, &points[z], &points[x])).unwrap();
                let zy = find(&cone_multiply(&group, &points[z], &points[y])).unwrap();
                if d[zx][zy] > d[x][y] {
                    left_witness = Some((z, x, y));
                    break 'left;
                }
            }
        }
    }
    let mut right_witness = None;
    'right: for z in 0..k {
        for x in 0..k {
            for y in 0..k {
                let xz = find(&cone_multiply(&group, &points[x], &points[z])).unwrap();
                let yz = find(&cone_multiply(&group, &points[y], &points[z])).unwrap();
                if d[xz][yz] > d[x][y] {
                    right_witness = Some((z, x, y));
                    break 'right;
                }
            }
        }
    }

    let base = invariance_flags(dg);
    let left_subinvariant = left_witness.is_none();
    let right_subinvariant = right_witness.is_none();
    Ok(ConeSampleReport {
        points,
        metric: metric_failure.is_none(),
        metric_failure,
        left_subinvariant,
        right_subinvariant,
        left_witness,
        right_witness,
        base_left_subinvariant: base.left_subinvariant,
        base_right_subinvariant: base.right_subinvariant,
        inherits_left: !base.left_subinvariant || left_subinvariant,
        inherits_right: !base.right_subinvariant || right_subinvariant,
    })
}

/// The cone metric sampled on the chain-discretized cone `chain(levels) ×_0 G`,
/// as a validated matrix over that Cayley table.
pub fn cone_metric_matrix(
    dg: &MetricMatrix,
    levels: usize,
) -> Result<(ReducedProduct, MetricMatrix)> {
    let rp = cone(dg.base(), levels)?;
    let point_of = |index: usize| -> ConePoint {
        match rp.coding.decode(index) {
            ReducedElement::Collapsed(_) => ConePoint::apex(),
            ReducedElement::Pair(level, h) => {
                ConePoint::new(Ratio::new(level as i64, levels as i64), h)
                    .expect("chain levels lie in [0,1]")
            }
        }
    };
    let n = rp.semigroup.size();
    let d: Vec<Vec<Ratio>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| cone_metric(dg, &point_of(i), &point_of(j)))
                .collect()
        })
        .collect();
    let matrix = MetricMatrix::new(rp.semigroup.clone(), d)?;
    Ok((rp, matrix))
}

/// Distance oracle on the carrier `{0} ∪ {1/k : 1 ≤ k ≤ N}`, indexed so that
/// `0` is the limit point and `k ≥ 1` denotes `1/k`.
#[derive(Clone, Debug)]
pub enum MetricOracle {
    /// `d(x,y) = |x − y|` on the carrier.
    Euclid { truncation: usize },
    /// The discrete metric on the carrier.
    Discrete { truncation: usize },
    /// An explicit `(N+1) × (N+1)` table.
    Table { d: Vec<Vec<Ratio>> },
}

impl MetricOracle {
    pub fn euclid(truncation: usize) -> Result<Self> {
        if truncation < 1 {
            return Err(Error::MalformedOracle("truncation must be at least 1".into()));
        }
        Ok(MetricOracle::Euclid { truncation })
    }

    pub fn discrete(truncation: usize) -> Result<Self> {
        if truncation < 1 {
            return Err(Error::MalformedOracle("truncation must be at least 1".into()));
        }
        Ok(MetricOracle::Discrete { truncation })
    }

    /// Validates symmetry, the zero diagonal, positivity off the diagonal
    /// and the triangle inequality on the whole table.
    pub fn table(d: Vec<Vec<Ratio>>) -> Result<Self> {
        if d.len() < 2 {
            return Err(Error::MalformedOracle(
                "table must cover the limit point and at least 1/1".into(),
            ));
        }
        let n = d.len();
        for row in &d {
            if row.len() != n {
                return Err(Error::MalformedOracle("table must be square".into()));
            }
        }
        if let Some(failure) = axioms_failure(n, &d) {
            return Err(Error::MalformedOracle(failure.to_string()));
        }
        Ok(MetricOracle::Table { d })
    }

    /// Largest `k` with `1/k` in the carrier.
    pub fn truncation(&self) -> usize {
        match self {
            MetricOracle::Euclid { truncation } | MetricOracle::Discrete { truncation } => {
                *truncation
            }
            MetricOracle::Table { d } => d.len() - 1,
        }
    }

    /// The carrier point behind an index.
    pub fn point(&self, index: usize) -> Ratio {
        if index == 0 {
            Ratio::zero()
        } else {
            Ratio::new(1, index as i64)
        }
    }

    pub fn eval(&self, i: usize, j: usize) -> Ratio {
        match self {
            MetricOracle::Euclid { .. } => (self.point(i) - self.point(j)).abs(),
            MetricOracle::Discrete { .. } => {
                if i == j {
                    Ratio::zero()
                } else {
                    Ratio::one()
                }
            }
            MetricOracle::Table { d } => d[i][j],
        }
    }
}

/// Result of the refutation procedure on the reciprocal semilattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// The oracle itself breaks the subinvariance consequence
    /// `d(0, 1/(2n+1)) ≤ d(0, 1/(2n))`.
    Violation {
        n: usize,
        odd_distance: Ratio,
        even_distance: Ratio,
    },
    /// `d(0, 1/(2n)) ≤ ε`, so subinvariance drags the odd point `1/(2n+1)`
    /// into the closed ε-ball around 0 — against its isolation.
    Witness {
        n: usize,
        even_distance: Ratio,
        odd_distance: Ratio,
    },
    /// Neither event occurs up to the truncation.
    Inconclusive {
        truncation: usize,
        min_even_distance: Option<Ratio>,
    },
}

/// Semi-decision procedure against subinvariant metrizability of the
/// semilattice `{0} ∪ {1/n}` under minimum, topologized so that the even
/// reciprocals converge to 0 while the odd ones stay isolated.
///
/// Left subinvariance with `z = 1/(2n+1)` forces
/// `d(0, 1/(2n+1)) ≤ d(0, 1/(2n))`, so the procedure first scans for a
/// violation of that chain (the oracle is then not subinvariant at all) and
/// otherwise looks for an even point inside the closed ε-ball around 0,
/// which drags the next odd point in with it. Truncation makes
/// `Inconclusive` an honest third verdict.
pub fn refute_subinvariance(oracle: &MetricOracle, epsilon: Ratio) -> Result<Refutation> {
    if epsilon <= Ratio::zero() {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let truncation = oracle.truncation();
    let max_n = truncation.saturating_sub(1) / 2;
    for n in 1..=max_n {
        let even_distance = oracle.eval(0, 2 * n);
        let odd_distance = oracle.eval(0, 2 * n + 1);
        if odd_distance > even_distance {
            return Ok(Refutation::Violation {
                n,
                odd_distance,
                even_distance,
            });
        }
    }
    for n in 1..=max_n {
        let even_distance = oracle.eval(0, 2 * n);
        if even_distance <= epsilon {
            return Ok(Refutation::Witness {
                n,
                even_distance,
                odd_distance: oracle.eval(0, 2 * n + 1),
            });
        }
    }
    let min_even_distance = (1..=max_n).map(|n| oracle.eval(0, 2 * n)).min();
    Ok(Refutation::Inconclusive {
        truncation,
        min_even_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::semigroup::clifford_structure;

    fn z2() -> FiniteSemigroup {
        catalog::find("z2").unwrap()
    }

    fn two() -> FiniteSemigroup {
        catalog::find("two").unwrap()
    }

    #[test]
    fn discrete_metric_is_subinvariant_on_groups_and_semilattices() {
        for s in [z2(), two()] {
            let c = clifford_structure(&s).unwrap();
            let m = MetricMatrix::discrete(s);
            let flags = check_metric_flags(&m, &c);
            assert!(flags.metric && flags.subinvariant);
        }
    }

    #[test]
    fn rescaled_two_point_metric_stays_subinvariant() {
        let s = two();
        let c = clifford_structure(&s).unwrap();
        let m = MetricMatrix::new(
            s,
            vec![
                vec![ratio(0, 1), ratio(2, 1)],
                vec![ratio(2, 1), ratio(0, 1)],
            ],
        )
        .unwrap();
        let flags = check_metric_flags(&m, &c);
        assert!(flags.subinvariant);
    }

    #[test]
    fn invalid_metrics_are_rejected_with_witnesses() {
        let s = two();
        let err = MetricMatrix::new(
            s.clone(),
            vec![
                vec![ratio(0, 1), ratio(1, 1)],
                vec![ratio(2, 1), ratio(0, 1)],
            ],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidMetric(MetricAxiomFailure::NotSymmetric { x: 0, y: 1 })
        ));

        let c3 = catalog::find("chain2").unwrap();
        let err = MetricMatrix::new(
            c3,
            vec![
                vec![ratio(0, 1), ratio(1, 1), ratio(5, 1)],
                vec![ratio(1, 1), ratio(0, 1), ratio(1, 1)],
                vec![ratio(5, 1), ratio(1, 1), ratio(0, 1)],
            ],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidMetric(MetricAxiomFailure::Triangle { x: 0, y: 1, z: 2 })
        ));
    }

    #[test]
    fn closure_of_the_discrete_metric_is_discrete() {
        for s in [z2(), two()] {
            let c = clifford_structure(&s).unwrap();
            let m = MetricMatrix::discrete(s);
            let closed = subinvariant_closure(&m, &c);
            assert_eq!(closed.entries(), m.entries());
        }
    }

    #[test]
    fn closure_is_subinvariant_and_a_fixed_point() {
        let s = catalog::find("zero_ext_z2").unwrap();
        let c = clifford_structure(&s).unwrap();
        let m = MetricMatrix::new(
            s.clone(),
            vec![
                vec![ratio(0, 1), ratio(1, 1), ratio(3, 2)],
                vec![ratio(1, 1), ratio(0, 1), ratio(1, 2)],
                vec![ratio(3, 2), ratio(1, 2), ratio(0, 1)],
            ],
        )
        .unwrap();
        let closed = subinvariant_closure(&m, &c);
        assert!(check_metric_flags(&closed, &c).subinvariant);
        let twice = subinvariant_closure(&closed, &c);
        assert_eq!(twice.entries(), closed.entries());
    }

    #[test]
    fn closure_handles_a_noncommutative_group() {
        let s3 = catalog::find("s3").unwrap();
        let c = clifford_structure(&s3).unwrap();
        // a lopsided metric: distances in [1,2], so triangle holds trivially
        let n = s3.size();
        let d: Vec<Vec<Ratio>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        if x == y {
                            Ratio::zero()
                        } else {
                            ratio(4 + ((x * 7 + y * 3) % 5) as i64, 4)
                        }
                    })
                    .collect()
            })
            .collect();
        let sym: Vec<Vec<Ratio>> = (0..n)
            .map(|x| (0..n).map(|y| d[x][y].max(d[y][x])).collect())
            .collect();
        let m = MetricMatrix::new(s3.clone(), sym).unwrap();
        let closed = subinvariant_closure(&m, &c);
        assert!(check_metric_flags(&closed, &c).subinvariant);
        // the closure dominates the input
        for x in 0..n {
            for y in 0..n {
                assert!(closed.get(x, y) >= m.get(x, y));
            }
        }
    }

    #[test]
    fn word_metric_on_s3_from_transpositions() {
        let s3 = catalog::find("s3").unwrap();
        // transpositions sit at indices 1, 2, 5 of the fixed element order
        let m = word_metric(&s3, &[1, 2, 5]).unwrap();
        assert_eq!(m.get(0, 1), ratio(1, 1));
        assert_eq!(m.get(0, 3), ratio(2, 1)); // a 3-cycle needs two letters
        let c = clifford_structure(&s3).unwrap();
        assert!(check_metric_flags(&m, &c).subinvariant); // class-closed generators
    }

    #[test]
    fn word_metric_needs_a_generating_set() {
        let klein = catalog::find("klein").unwrap();
        assert!(matches!(
            word_metric(&klein, &[1]),
            Err(Error::NotGenerating { .. })
        ));
    }

    #[test]
    fn cone_metric_formula_cases() {
        let m = MetricMatrix::discrete(z2());
        let apex = ConePoint::apex();
        let half_e = ConePoint::new(ratio(1, 2), 0).unwrap();
        let one_e = ConePoint::new(Ratio::one(), 0).unwrap();
        let one_g = ConePoint::new(Ratio::one(), 1).unwrap();

        assert_eq!(cone_metric(&m, &apex, &half_e), ratio(1, 2));
        assert_eq!(cone_metric(&m, &apex, &one_g), ratio(1, 1));
        assert_eq!(cone_metric(&m, &one_e, &one_g), ratio(1, 1)); // min{2, d}
        assert_eq!(cone_metric(&m, &one_g, &one_g), Ratio::zero());
        assert_eq!(cone_metric(&m, &half_e, &one_e), ratio(1, 2));
    }

    #[test]
    fn apex_representation_is_normalized_away() {
        let p = ConePoint::new(Ratio::zero(), 1).unwrap();
        assert_eq!(p, ConePoint::apex());
        let m = MetricMatrix::discrete(z2());
        let y = ConePoint::new(ratio(1, 3), 1).unwrap();
        assert_eq!(cone_metric(&m, &p, &y), ratio(1, 3));
    }

    #[test]
    fn cone_points_reject_levels_outside_the_interval() {
        assert!(ConePoint::new(ratio(3, 2), 0).is_err());
        assert!(ConePoint::new(ratio(-1, 2), 0).is_err());
    }

    fn two_level_sample(group: &FiniteSemigroup) -> Vec<ConePoint> {
        let mut sample = vec![ConePoint::apex()];
        for &level in &[ratio(1, 2), Ratio::one()] {
            for g in 0..group.size() {
                sample.push(ConePoint::new(level, g).unwrap());
            }
        }
        sample
    }

    #[test]
    fn cone_sample_checks_pass_for_bi_invariant_word_metrics() {
        let z3 = catalog::find("z3").unwrap();
        let m = word_metric(&z3, &[1]).unwrap();
        let report = verify_cone_metric(&m, &two_level_sample(&z3)).unwrap();
        assert!(report.metric);
        assert!(report.left_subinvariant && report.right_subinvariant);
        assert!(report.inherits_left && report.inherits_right);
        assert_eq!(report.points.len(), 7);
    }

    #[test]
    fn degenerate_apex_sample_passes() {
        let m = MetricMatrix::discrete(z2());
        let report = verify_cone_metric(&m, &[ConePoint::apex()]).unwrap();
        assert!(report.metric && report.left_subinvariant && report.right_subinvariant);
    }

    #[test]
    fn unclosed_samples_are_rejected() {
        let m = MetricMatrix::discrete(z2());
        let sample = vec![
            ConePoint::new(Ratio::one(), 0).unwrap(),
            ConePoint::new(Ratio::one(), 1).unwrap(),
            ConePoint::new(ratio(1, 2), 0).unwrap(),
            // missing (1/2, g): the product of (1/2,e) and (1,g)
        ];
        assert!(matches!(
            verify_cone_metric(&m, &sample),
            Err(Error::SampleNotClosed { .. })
        ));
    }

    #[test]
    fn sampled_cone_matrix_is_a_subinvariant_metric() {
        let z3 = catalog::find("z3").unwrap();
        let dg = word_metric(&z3, &[1]).unwrap();
        let (rp, matrix) = cone_metric_matrix(&dg, 2).unwrap();
        let c = clifford_structure(&rp.semigroup).unwrap();
        assert!(check_metric_flags(&matrix, &c).subinvariant);
    }

    #[test]
    fn euclid_oracle_produces_the_closed_form_witness() {
        let oracle = MetricOracle::euclid(128).unwrap();
        match refute_subinvariance(&oracle, ratio(1, 100)).unwrap() {
            Refutation::Witness {
                n,
                even_distance,
                odd_distance,
            } => {
                assert_eq!(n, 50);
                assert_eq!(even_distance, ratio(1, 100));
                assert_eq!(odd_distance, ratio(1, 101));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn discrete_oracle_is_inconclusive_below_one() {
        let oracle = MetricOracle::discrete(64).unwrap();
        match refute_subinvariance(&oracle, ratio(1, 2)).unwrap() {
            Refutation::Inconclusive {
                truncation,
                min_even_distance,
            } => {
                assert_eq!(truncation, 64);
                assert_eq!(min_even_distance, Some(Ratio::one()));
            }
            other => panic!("expected inconclusive, got {other:?}"),
        }
    }

    #[test]
    fn corrupted_table_yields_a_violation_at_the_first_pair() {
        // a valid metric with d(0, 1/3) > d(0, 1/2)
        let q = |n: i64, d: i64| ratio(n, d);
        let table = vec![
            vec![q(0, 1), q(1, 1), q(1, 2), q(3, 4)],
            vec![q(1, 1), q(0, 1), q(1, 2), q(3, 4)],
            vec![q(1, 2), q(1, 2), q(0, 1), q(1, 2)],
            vec![q(3, 4), q(3, 4), q(1, 2), q(0, 1)],
        ];
        let oracle = MetricOracle::table(table).unwrap();
        match refute_subinvariance(&oracle, ratio(1, 100)).unwrap() {
            Refutation::Violation {
                n,
                odd_distance,
                even_distance,
            } => {
                assert_eq!(n, 1);
                assert_eq!(odd_distance, q(3, 4));
                assert_eq!(even_distance, q(1, 2));
            }
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn malformed_tables_are_rejected() {
        let q = |n: i64, d: i64| ratio(n, d);
        // asymmetric
        let table = vec![
            vec![q(0, 1), q(1, 1)],
            vec![q(2, 1), q(0, 1)],
        ];
        assert!(matches!(
            MetricOracle::table(table),
            Err(Error::MalformedOracle(_))
        ));
    }

    #[test]
    fn epsilon_must_be_positive() {
        let oracle = MetricOracle::euclid(8).unwrap();
        assert!(refute_subinvariance(&oracle, ratio(0, 1)).is_err());
    }
}
