//! Cayley-table semigroups and their structural predicates.
//!
//! Everything downstream assumes a [`FiniteSemigroup`] is valid, so
//! associativity is checked eagerly at construction — `O(n³)`, which is the
//! price of admission at desk scale. Elements are dense indices `0..size`;
//! labels are display metadata only and never affect the algebra.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::limits;
use crate::Result;

/// A finite semigroup as an explicit multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    size: usize,
    table: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl FiniteSemigroup {
    /// Validates a raw square table: shape, index range, size cap, and
    /// associativity for every triple. Reports the first failing triple.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let size = table.len();
        let cap = limits::max_elements();
        if size > cap {
            return Err(Error::TooManyElements { size, cap });
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != size {
                return Err(Error::NotSquare {
                    row,
                    expected: size,
                    found: entries.len(),
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= size {
                    return Err(Error::IndexOutOfRange {
                        row,
                        col,
                        value,
                        size,
                    });
                }
            }
        }
        for i in 0..size {
            for j in 0..size {
                let ij = table[i][j];
                for k in 0..size {
                    let left = table[ij][k];
                    let right = table[i][table[j][k]];
                    if left != right {
                        return Err(Error::NotAssociative {
                            i,
                            j,
                            k,
                            left,
                            right,
                        });
                    }
                }
            }
        }
        Ok(FiniteSemigroup {
            size,
            table,
            labels: None,
        })
    }

    /// Same as [`FiniteSemigroup::from_table`], attaching one label per element.
    pub fn from_table_with_labels(table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let mut s = Self::from_table(table)?;
        s.set_labels(labels)?;
        Ok(s)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Product of two elements by table lookup.
    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.size {
            return Err(Error::NotSquare {
                row: self.size + 1,
                expected: self.size,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(())
    }

    /// Display name of an element: its label if present, else the index.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(ls) => ls[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.size {
            Ok(())
        } else {
            Err(Error::NoSuchElement {
                element: x,
                size: self.size,
            })
        }
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.table[x][x] == x
    }

    /// Structural equality: same table, labels ignored.
    pub fn same_table(&self, other: &FiniteSemigroup) -> bool {
        self.table == other.table
    }

    /// Sorted list of idempotent elements.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.is_idempotent(x)).collect()
    }

    /// Restriction of the table to a closed subset, with the index map back
    /// into the parent. The subset is sorted and deduplicated first.
    pub fn sub_semigroup(&self, elements: &[usize]) -> Result<SubSemigroup> {
        let mut to_parent: Vec<usize> = elements.to_vec();
        to_parent.sort_unstable();
        to_parent.dedup();
        for &x in &to_parent {
            self.check_element(x)?;
        }
        let mut local = vec![usize::MAX; self.size];
        for (i, &x) in to_parent.iter().enumerate() {
            local[x] = i;
        }
        let k = to_parent.len();
        let mut table = vec![vec![0usize; k]; k];
        for i in 0..k {
            for j in 0..k {
                let p = self.mul(to_parent[i], to_parent[j]);
                if local[p] == usize::MAX {
                    return Err(Error::SubsetNotClosed {
                        x: to_parent[i],
                        y: to_parent[j],
                        product: p,
                    });
                }
                table[i][j] = local[p];
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|ls| to_parent.iter().map(|&x| ls[x].clone()).collect());
        let mut semigroup = FiniteSemigroup::from_table(table)?;
        if let Some(ls) = labels {
            semigroup.set_labels(ls)?;
        }
        Ok(SubSemigroup {
            semigroup,
            to_parent,
        })
    }
}

/// A closed subset re-indexed as a semigroup of its own.
#[derive(Clone, Debug)]
pub struct SubSemigroup {
    pub semigroup: FiniteSemigroup,
    /// `to_parent[i]` is the parent index of local element `i` (ascending).
    pub to_parent: Vec<usize>,
}

impl SubSemigroup {
    pub fn to_local(&self, parent: usize) -> Option<usize> {
        self.to_parent.binary_search(&parent).ok()
    }
}

/// Structure report produced by [`classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_semilattice: bool,
    pub is_group: bool,
    pub is_regular: bool,
    pub is_inverse: bool,
    pub is_clifford: bool,
    pub idempotents: Vec<usize>,
    pub idempotents_commute: bool,
}

/// Exhaustive-search classification of a validated semigroup.
///
/// `is_inverse` is determined directly (each element has exactly one
/// pseudo-inverse) and cross-checked against the classical criterion
/// "regular with commuting idempotents"; disagreement would be a bug in this
/// crate, not a property of the input.
pub fn classify(s: &FiniteSemigroup) -> Classification {
    let n = s.size();
    let idempotents = s.idempotents();

    let mut idempotents_commute = true;
    'outer: for &e in &idempotents {
        for &f in &idempotents {
            if s.mul(e, f) != s.mul(f, e) {
                idempotents_commute = false;
                break 'outer;
            }
        }
    }

    let is_semilattice = (0..n).all(|x| s.is_idempotent(x))
        && (0..n).all(|x| (0..n).all(|y| s.mul(x, y) == s.mul(y, x)));

    let identity = (0..n).find(|&e| (0..n).all(|x| s.mul(e, x) == x && s.mul(x, e) == x));
    let is_group = match identity {
        Some(e) => (0..n).all(|x| (0..n).any(|y| s.mul(x, y) == e && s.mul(y, x) == e)),
        None => false,
    };

    let mut is_regular = true;
    let mut is_inverse = true;
    let mut is_clifford = true;
    for x in 0..n {
        let candidates: Vec<usize> = (0..n)
            .filter(|&y| s.mul(s.mul(x, y), x) == x && s.mul(s.mul(y, x), y) == y)
            .collect();
        if candidates.is_empty() {
            is_regular = false;
            is_inverse = false;
            is_clifford = false;
            break;
        }
        if candidates.len() > 1 {
            is_inverse = false;
            is_clifford = false;
        } else {
            let y = candidates[0];
            if s.mul(x, y) != s.mul(y, x) {
                is_clifford = false;
            }
        }
    }

    assert_eq!(
        is_inverse,
        is_regular && idempotents_commute,
        "internal error: inverse-semigroup cross-check disagrees with the direct search"
    );

    Classification {
        is_semilattice,
        is_group,
        is_regular,
        is_inverse,
        is_clifford,
        idempotents,
        idempotents_commute,
    }
}

/// Inverses, the idempotent projection, and the idempotent set of a Clifford
/// semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordStructure {
    /// `inverse[x]` is the unique inverse of `x`.
    pub inverse: Vec<usize>,
    /// `pi[x] = x * inverse[x] = inverse[x] * x`, an idempotent.
    pub pi: Vec<usize>,
    /// Sorted idempotent set `E`.
    pub idempotents: Vec<usize>,
}

/// Computes the Clifford structure, verifying on the way that inverses are
/// unique, that `x·x⁻¹ = x⁻¹·x`, and that the projection onto idempotents is
/// a homomorphism fixing the idempotents.
#[allow(clippy::needless_range_loop)]
pub fn clifford_structure(s: &FiniteSemigroup) -> Result<CliffordStructure> {
    let n = s.size();
    let mut inverse = vec![0usize; n];
    for x in 0..n {
        let candidates: Vec<usize> = (0..n)
            .filter(|&y| s.mul(s.mul(x, y), x) == x && s.mul(s.mul(y, x), y) == y)
            .collect();
        match candidates.as_slice() {
            [] => {
                return Err(Error::NotClifford {
                    reason: format!("element {x} has no pseudo-inverse"),
                })
            }
            [y] => {
                if s.mul(x, *y) != s.mul(*y, x) {
                    return Err(Error::NotClifford {
                        reason: format!("{x}*{y} and {y}*{x} are distinct idempotent projections"),
                    });
                }
                inverse[x] = *y;
            }
            _ => {
                return Err(Error::NotClifford {
                    reason: format!(
                        "element {x} has {} pseudo-inverses, so the semigroup is not inverse",
                        candidates.len()
                    ),
                })
            }
        }
    }
    let pi: Vec<usize> = (0..n).map(|x| s.mul(x, inverse[x])).collect();
    let idempotents = s.idempotents();

    for x in 0..n {
        assert_eq!(inverse[inverse[x]], x, "inversion must be an involution");
        assert!(s.is_idempotent(pi[x]), "projection must land on idempotents");
        if s.is_idempotent(x) {
            assert_eq!(inverse[x], x, "idempotents are self-inverse");
            assert_eq!(pi[x], x, "projection fixes idempotents");
        }
        for y in 0..n {
            assert_eq!(
                pi[s.mul(x, y)],
                s.mul(pi[x], pi[y]),
                "projection onto the idempotent set must be a homomorphism"
            );
        }
    }

    Ok(CliffordStructure {
        inverse,
        pi,
        idempotents,
    })
}

/// Partition of a Clifford semigroup into its maximal subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupDecomposition {
    /// Sorted member list of `H_e` for each idempotent `e`.
    pub groups: BTreeMap<usize, Vec<usize>>,
}

/// Fibers of the idempotent projection, each verified to be a group with the
/// idempotent as identity.
pub fn maximal_subgroups(s: &FiniteSemigroup, c: &CliffordStructure) -> SubgroupDecomposition {
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &e in &c.idempotents {
        groups.insert(e, Vec::new());
    }
    for x in 0..s.size() {
        groups
            .get_mut(&c.pi[x])
            .expect("projection lands on idempotents")
            .push(x);
    }
    let mut total = 0usize;
    for (&e, members) in &groups {
        total += members.len();
        for &x in members {
            assert_eq!(s.mul(e, x), x, "idempotent must be a left identity in its fiber");
            assert_eq!(s.mul(x, e), x, "idempotent must be a right identity in its fiber");
            assert_eq!(c.pi[s.mul(x, c.inverse[x])], e, "fiber closed under inversion");
            for &y in members {
                assert_eq!(
                    c.pi[s.mul(x, y)],
                    e,
                    "fiber must be closed under the operation"
                );
            }
        }
    }
    assert_eq!(total, s.size(), "fibers must partition the semigroup");
    SubgroupDecomposition { groups }
}

/// Detailed ideal report; `two_sided` is the operative predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealCheck {
    /// `S·I ⊆ I`.
    pub absorbs_left: bool,
    /// `I·S ⊆ I`.
    pub absorbs_right: bool,
    /// The literal sandwich condition `S·I·S ⊆ I`.
    pub sandwich: bool,
    /// `absorbs_left && absorbs_right`.
    pub two_sided: bool,
}

/// Checks the two one-sided absorption conditions and, separately, the
/// literal sandwich condition `SIS ⊆ I`.
pub fn ideal_check(s: &FiniteSemigroup, subset: &[usize]) -> IdealCheck {
    let member = membership(s.size(), subset);
    let n = s.size();
    let mut absorbs_left = true;
    let mut absorbs_right = true;
    for x in 0..n {
        for &i in subset {
            if !member[s.mul(x, i)] {
                absorbs_left = false;
            }
            if !member[s.mul(i, x)] {
                absorbs_right = false;
            }
        }
    }
    let mut sandwich = true;
    'out: for x in 0..n {
        for &i in subset {
            let xi = s.mul(x, i);
            for y in 0..n {
                if !member[s.mul(xi, y)] {
                    sandwich = false;
                    break 'out;
                }
            }
        }
    }
    IdealCheck {
        absorbs_left,
        absorbs_right,
        sandwich,
        two_sided: absorbs_left && absorbs_right,
    }
}

/// Two-sided ideal predicate: `S·I ⊆ I` and `I·S ⊆ I`.
pub fn is_ideal(s: &FiniteSemigroup, subset: &[usize]) -> bool {
    ideal_check(s, subset).two_sided
}

/// The set `{x : ∃ b ∈ B, ∃ a ∈ A, b = x·a}` of right divisions of `B` by `A`.
pub fn right_division_set(s: &FiniteSemigroup, b: &[usize], a: &[usize]) -> Vec<usize> {
    let in_b = membership(s.size(), b);
    (0..s.size())
        .filter(|&x| a.iter().any(|&ai| in_b[s.mul(x, ai)]))
        .collect()
}

fn membership(size: usize, subset: &[usize]) -> Vec<bool> {
    let mut member = vec![false; size];
    for &x in subset {
        member[x] = true;
    }
    member
}
