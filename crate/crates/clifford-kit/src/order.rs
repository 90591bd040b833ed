//! Natural partial order of a finite semilattice.
//!
//! The order is `x ≤ y` iff `x·y = x`. Under the discrete reading (see the
//! crate docs) the way-below relation collapses to `≤`, every point is
//! locally minimal, and the only U-dense subset is the whole semilattice;
//! the operations below still evaluate their definitions instead of
//! returning the collapsed answers outright, and the tests assert that both
//! agree.

use crate::error::Error;
use crate::limits;
use crate::semigroup::{classify, FiniteSemigroup};
use crate::Result;

/// A semilattice together with its natural order matrix.
#[derive(Clone, Debug)]
pub struct SemilatticeOrder {
    base: FiniteSemigroup,
    leq: Vec<Vec<bool>>,
}

/// Builds the natural order of a semilattice and verifies the poset axioms
/// and the meet property (`x·y` is the greatest lower bound of `x` and `y`).
#[allow(clippy::needless_range_loop)]
pub fn natural_order(e: &FiniteSemigroup) -> Result<SemilatticeOrder> {
    if !classify(e).is_semilattice {
        return Err(Error::NotSemilattice);
    }
    let n = e.size();
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|x| (0..n).map(|y| e.mul(x, y) == x).collect())
        .collect();

    for x in 0..n {
        assert!(leq[x][x], "natural order must be reflexive");
        for y in 0..n {
            if leq[x][y] && leq[y][x] {
                assert_eq!(x, y, "natural order must be antisymmetric");
            }
            for z in 0..n {
                if leq[x][y] && leq[y][z] {
                    assert!(leq[x][z], "natural order must be transitive");
                }
            }
            // x·y is a lower bound of {x,y} and dominates every other one
            let m = e.mul(x, y);
            assert!(leq[m][x] && leq[m][y]);
            for l in 0..n {
                if leq[l][x] && leq[l][y] {
                    assert!(leq[l][m], "the product must be the greatest lower bound");
                }
            }
        }
    }

    Ok(SemilatticeOrder {
        base: e.clone(),
        leq,
    })
}

/// Down-cone, up-cone and way-below cone of one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cones {
    pub down: Vec<usize>,
    pub up: Vec<usize>,
    /// `{y : y ≪ x}`; equals `down` in the discrete reading.
    pub way_below: Vec<usize>,
}

impl SemilatticeOrder {
    pub fn base(&self) -> &FiniteSemigroup {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// `y ≪ x`: the upper cone of `y` is an open neighborhood of `x`. Every
    /// subset of a finite discrete space is open, so this is `y ≤ x`.
    #[inline]
    pub fn way_below(&self, y: usize, x: usize) -> bool {
        self.leq[y][x]
    }

    pub fn down_set(&self, x: usize) -> Vec<usize> {
        (0..self.size()).filter(|&y| self.leq[y][x]).collect()
    }

    pub fn up_set(&self, x: usize) -> Vec<usize> {
        (0..self.size()).filter(|&y| self.leq[x][y]).collect()
    }

    pub fn cones(&self, x: usize) -> Result<Cones> {
        self.base.check_element(x)?;
        Ok(Cones {
            down: self.down_set(x),
            up: self.up_set(x),
            way_below: (0..self.size()).filter(|&y| self.way_below(y, x)).collect(),
        })
    }

    /// Points whose upper cone is open — all of them in a discrete space.
    /// Kept as an operation so a non-discrete backend could refine it.
    pub fn locally_minimal_points(&self) -> Vec<usize> {
        (0..self.size()).collect()
    }

    /// U-density of a subset: every point `x` must see, inside each of its
    /// neighborhoods, a member of the subset way below `x`. The minimal
    /// discrete neighborhood of `x` is `{x}`, so the loop below evaluates
    /// the definition with that neighborhood; the discrete collapse to
    /// "subset = whole semilattice" is asserted in the tests, not assumed.
    pub fn is_u_dense(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.size()];
        for &a in subset {
            if a < member.len() {
                member[a] = true;
            }
        }
        (0..self.size()).all(|x| member[x] && self.way_below(x, x))
    }

    /// The indicator map of `↑a` into `{0,1}`; a homomorphism into the
    /// two-element semilattice because meets respect upper cones.
    pub fn up_indicator_map(&self, a: usize) -> Vec<usize> {
        (0..self.size())
            .map(|x| if self.leq[a][x] { 1 } else { 0 })
            .collect()
    }

    /// All ideals (equivalently, down-closed subsets) in ascending bitmask
    /// order, each as a sorted element list.
    pub fn enumerate_ideals(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.size();
        if n > limits::IDEAL_ENUM_MAX_SIZE {
            return Err(Error::IdealEnumerationTooLarge {
                size: n,
                cap: limits::IDEAL_ENUM_MAX_SIZE,
            });
        }
        let mut out = Vec::new();
        'subset: for mask in 0u64..(1u64 << n) {
            let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            // down-closed
            for &x in &members {
                for y in 0..n {
                    if self.leq[y][x] && mask >> y & 1 == 0 {
                        continue 'subset;
                    }
                }
            }
            // absorbing: E·I ⊆ I (coincides with down-closure in a semilattice)
            for &x in &members {
                for z in 0..n {
                    if mask >> self.base.mul(z, x) & 1 == 0 {
                        continue 'subset;
                    }
                }
            }
            out.push(members);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> FiniteSemigroup {
        FiniteSemigroup::from_table(vec![vec![0, 0], vec![0, 1]]).unwrap()
    }

    fn chain3() -> FiniteSemigroup {
        FiniteSemigroup::from_table(vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]]).unwrap()
    }

    /// Componentwise min on 2×2: 0=(0,0), 1=(0,1), 2=(1,0), 3=(1,1).
    fn diamond() -> FiniteSemigroup {
        let pair = |i: usize, j: usize| (i / 2).min(j / 2) * 2 + (i % 2).min(j % 2);
        FiniteSemigroup::from_table((0..4).map(|i| (0..4).map(|j| pair(i, j)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rejects_non_semilattice() {
        let z2 = FiniteSemigroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(natural_order(&z2), Err(Error::NotSemilattice)));
    }

    #[test]
    fn chain_is_totally_ordered() {
        let o = natural_order(&chain3()).unwrap();
        assert!(o.leq(0, 1) && o.leq(1, 2) && o.leq(0, 2));
        assert!(!o.leq(2, 1));
    }

    #[test]
    fn diamond_poset_shape() {
        let o = natural_order(&diamond()).unwrap();
        assert!(o.leq(0, 1) && o.leq(0, 2) && o.leq(1, 3) && o.leq(2, 3));
        assert!(!o.leq(1, 2) && !o.leq(2, 1));
        assert_eq!(o.cones(3).unwrap().down, vec![0, 1, 2, 3]);
        assert_eq!(o.cones(3).unwrap().up, vec![3]);
    }

    #[test]
    fn cones_on_two() {
        let o = natural_order(&two()).unwrap();
        let c = o.cones(1).unwrap();
        assert_eq!(c.down, vec![0, 1]);
        assert_eq!(c.up, vec![1]);
        assert_eq!(c.way_below, vec![0, 1]); // discrete reading: ≪ is ≤
        let bottom = o.cones(0).unwrap();
        assert_eq!(bottom.up, vec![0, 1]);
        assert_eq!(bottom.down, vec![0]);
    }

    #[test]
    fn every_point_is_locally_minimal() {
        for s in [two(), chain3(), diamond()] {
            let o = natural_order(&s).unwrap();
            assert_eq!(o.locally_minimal_points(), (0..s.size()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn u_density_reduces_to_the_full_set() {
        for s in [two(), chain3(), diamond()] {
            let o = natural_order(&s).unwrap();
            let all: Vec<usize> = (0..s.size()).collect();
            assert!(o.is_u_dense(&all));
            // dropping any single point breaks density
            for skip in 0..s.size() {
                let partial: Vec<usize> = all.iter().copied().filter(|&x| x != skip).collect();
                assert!(!o.is_u_dense(&partial));
            }
        }
        let o = natural_order(&two()).unwrap();
        assert!(!o.is_u_dense(&[0]));
    }

    #[test]
    fn ideal_enumeration_counts() {
        assert_eq!(natural_order(&two()).unwrap().enumerate_ideals().unwrap().len(), 3);
        assert_eq!(natural_order(&chain3()).unwrap().enumerate_ideals().unwrap().len(), 4);
        assert_eq!(natural_order(&diamond()).unwrap().enumerate_ideals().unwrap().len(), 6);
    }

    #[test]
    fn ideals_of_two_listed_in_bitmask_order() {
        let o = natural_order(&two()).unwrap();
        assert_eq!(
            o.enumerate_ideals().unwrap(),
            vec![vec![], vec![0], vec![0, 1]]
        );
    }

    #[test]
    fn enumerated_ideals_agree_with_the_ideal_predicate() {
        use crate::semigroup::is_ideal;
        for s in [two(), chain3(), diamond()] {
            let o = natural_order(&s).unwrap();
            for ideal in o.enumerate_ideals().unwrap() {
                assert!(is_ideal(&s, &ideal));
            }
        }
    }

    #[test]
    fn up_indicators_are_homomorphisms_and_separate_points() {
        for s in [two(), chain3(), diamond()] {
            let o = natural_order(&s).unwrap();
            let n = s.size();
            for a in 0..n {
                let h = o.up_indicator_map(a);
                for x in 0..n {
                    for y in 0..n {
                        assert_eq!(h[s.mul(x, y)], h[x].min(h[y]));
                    }
                }
            }
            // the joint indicator family is injective
            for x in 0..n {
                for y in x + 1..n {
                    assert!(
                        (0..n).any(|a| {
                            let h = o.up_indicator_map(a);
                            h[x] != h[y]
                        }),
                        "indicator family failed to separate {x} and {y}"
                    );
                }
            }
        }
    }
}
